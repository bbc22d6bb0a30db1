#pragma once

// Umbrella header for the parafatou library.

#include "parafatou/complexfn.hpp"
#include "parafatou/maps.hpp"
#include "parafatou/map_json.hpp"
#include "parafatou/germ.hpp"
#include "parafatou/hyperbolic.hpp"
#include "parafatou/fatou.hpp"
#include "parafatou/horn.hpp"
#include "parafatou/chessboard.hpp"
#include "parafatou/verify.hpp"
