#pragma once

#include "chiraforce/cli.hpp"
#include "chiraforce/estimates.hpp"
#include "chiraforce/force_engine.hpp"
#include "chiraforce/io.hpp"
#include "chiraforce/isotropic.hpp"
#include "chiraforce/molecule.hpp"
#include "chiraforce/radiation.hpp"
#include "chiraforce/rot_avg.hpp"
#include "chiraforce/sampling.hpp"
#include "chiraforce/tensor.hpp"
#include "chiraforce/verify.hpp"
