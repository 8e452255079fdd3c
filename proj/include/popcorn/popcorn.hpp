#pragma once

// Umbrella header.

#include "chain_spectra.hpp"
#include "continued_fraction.hpp"
#include "dataset.hpp"
#include "dyson_borwein.hpp"
#include "ensemble_oracle.hpp"
#include "figures.hpp"
#include "lattice_bridge.hpp"
#include "modular_eta.hpp"
#include "rational.hpp"
#include "thomae.hpp"
