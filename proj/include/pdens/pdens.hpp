#pragma once

// Density functions of periodic sequences in the line, in exact arithmetic.

#include "error.hpp"
#include "rational.hpp"
#include "sequence.hpp"
#include "pwl.hpp"
#include "density.hpp"
#include "oracle.hpp"
#include "reconstruct.hpp"
#include "io.hpp"
