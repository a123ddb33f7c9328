#pragma once

#include "capacity.hpp"
#include "channel.hpp"
#include "combinatorics.hpp"
#include "core.hpp"
#include "error_model.hpp"
#include "matrix_functions.hpp"
#include "oracle.hpp"
#include "rank_distribution.hpp"
