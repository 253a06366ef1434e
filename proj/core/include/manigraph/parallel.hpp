#pragma once

namespace manigraph {

/// Caps the worker threads used inside the library. Values < 1 restore
/// the default (hardware concurrency). Results of row-parallel kernels do
/// not depend on this setting.
void set_num_threads(int threads);

int num_threads();

}  // namespace manigraph
