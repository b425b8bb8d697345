#pragma once

#include "fhlab/numerics.hpp"
#include "fhlab/specfun.hpp"
#include "fhlab/symbols.hpp"
#include "fhlab/szego.hpp"
#include "fhlab/toeplitz.hpp"
#include "fhlab/asymptotics.hpp"
#include "fhlab/spectra.hpp"
