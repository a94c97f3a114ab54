#pragma once

#include "irsvm/instance.hpp"
#include "irsvm/io.hpp"
#include "irsvm/objective.hpp"
#include "irsvm/solver.hpp"
#include "irsvm/spectral.hpp"
#include "irsvm/surrogate.hpp"
#include "irsvm/sweep.hpp"
#include "irsvm/trace.hpp"
#include "irsvm/types.hpp"
