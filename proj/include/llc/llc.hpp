#pragma once

#include "bimaterial.hpp"
#include "errors.hpp"
#include "fft.hpp"
#include "fourier.hpp"
#include "ll_constants.hpp"
#include "quadrature.hpp"
#include "sif_coupling.hpp"
#include "sif_perturbation.hpp"
#include "special_functions.hpp"
#include "verify.hpp"
#include "weight_functions.hpp"
#include "wiener_hopf.hpp"
