#pragma once

#include "manigraph/centrality.hpp"
#include "manigraph/clustering.hpp"
#include "manigraph/eigensolver.hpp"
#include "manigraph/embedding.hpp"
#include "manigraph/error.hpp"
#include "manigraph/graph.hpp"
#include "manigraph/io.hpp"
#include "manigraph/parallel.hpp"
#include "manigraph/rng.hpp"
#include "manigraph/sparse.hpp"
#include "manigraph/spectral_operator.hpp"
