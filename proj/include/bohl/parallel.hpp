#ifndef BOHL_PARALLEL_HPP
#define BOHL_PARALLEL_HPP

#include <functional>

namespace bohl {

// Worker count used by parallel_chunks. Resolution order: explicit
// set_thread_count, BOHL_SPECTRA_THREADS, hardware concurrency.
int thread_count();
void set_thread_count(int n);

// Splits [0, n_items) into a fixed number of contiguous chunks and runs
// fn(lo, hi, chunk_index) for each. The chunk layout depends only on n_items,
// never on the worker count, so per-chunk results (merged in chunk order by
// the caller) are identical for any --threads value.
void parallel_chunks(long n_items,
                     const std::function<void(long, long, int)>& fn);

int chunk_count(long n_items);

}  // namespace bohl

#endif
