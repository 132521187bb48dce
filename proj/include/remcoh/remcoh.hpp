// remcoh.hpp - umbrella header

#pragma once

#include "remcoh/matrix.hpp"
#include "remcoh/channels.hpp"
#include "remcoh/measures.hpp"
#include "remcoh/protocols.hpp"
#include "remcoh/experiments.hpp"
