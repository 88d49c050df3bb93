#pragma once

// Umbrella header.

#include "sga/blade.hpp"
#include "sga/circuit.hpp"
#include "sga/errors.hpp"
#include "sga/factoring.hpp"
#include "sga/halting.hpp"
#include "sga/layout.hpp"
#include "sga/multivector.hpp"
#include "sga/netlist_io.hpp"
#include "sga/oracle_search.hpp"
#include "sga/rational.hpp"
#include "sga/serialize.hpp"
#include "sga/turing.hpp"
