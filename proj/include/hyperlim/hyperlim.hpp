#pragma once

#include "hyperlim/common.hpp"
#include "hyperlim/hypergraph.hpp"
#include "hyperlim/homomorphism.hpp"
#include "hyperlim/hypergraphon.hpp"
#include "hyperlim/io.hpp"
#include "hyperlim/regularity.hpp"
#include "hyperlim/removal.hpp"
