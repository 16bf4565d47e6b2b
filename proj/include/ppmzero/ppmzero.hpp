#pragma once

#include "ppmzero/channel.hpp"
#include "ppmzero/codebook_io.hpp"
#include "ppmzero/constructions.hpp"
#include "ppmzero/core.hpp"
#include "ppmzero/decode.hpp"
#include "ppmzero/distinguishability.hpp"
#include "ppmzero/oracle.hpp"
#include "ppmzero/rational.hpp"
