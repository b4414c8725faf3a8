#pragma once

#include <string>

namespace disi {

/// Selects the serial reference loop or the OpenMP kernel. Both paths produce
/// bitwise-identical results: work is split into fixed chunks with their own
/// sub-seeds and partial results are reduced in chunk order.
enum class Exec { serial, parallel };

int max_threads();
void set_threads(int n);
std::string openmp_version();

/// Reads DISI_NUM_THREADS, if set, and applies it.
void apply_thread_env();

}  // namespace disi
