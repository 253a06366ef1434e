#include "manigraph/parallel.hpp"

#include <omp.h>

namespace manigraph {

namespace {
const int kDefaultThreads = omp_get_max_threads();
}

void set_num_threads(int threads) {
  omp_set_num_threads(threads < 1 ? kDefaultThreads : threads);
}

int num_threads() { return omp_get_max_threads(); }

}  // namespace manigraph
