#pragma once

#include "toeplitz_spectra/error.hpp"
#include "toeplitz_spectra/exact.hpp"
#include "toeplitz_spectra/io.hpp"
#include "toeplitz_spectra/mplinalg.hpp"
#include "toeplitz_spectra/mpreal.hpp"
#include "toeplitz_spectra/params.hpp"
#include "toeplitz_spectra/spectrum.hpp"
#include "toeplitz_spectra/verify.hpp"
