#pragma once

// Derivative-free local search and the deterministic multi-start machinery
// shared by the disc searches and the quadratic-differential pairing search.

#include <cstdint>
#include <functional>
#include <future>
#include <vector>

namespace gt {

/// Counter-based generator: every draw is a pure function of (seed, stream,
/// index), so a multi-start run gives the same numbers in any schedule.
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    /// Uniform in [0, 1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

struct NelderMeadOptions {
    int max_evals = 2000;
    double f_tol = 1e-14;
    double x_tol = 1e-12;
};

struct NelderMeadResult {
    std::vector<double> x;
    double f;
    int evals;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Nelder-Mead simplex minimization. +inf objective values are allowed and
/// act as rejection of infeasible points.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const std::vector<double>& step,
                             const NelderMeadOptions& opts);

/// Runs task(i) for i in [0, n), on up to `threads` workers, and returns the
/// results in index order.
template <class T, class Task>
std::vector<T> run_indexed(int n, int threads, Task task) {
    std::vector<T> out;
    out.reserve(n);
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) out.push_back(task(i));
        return out;
    }
    for (int base = 0; base < n; base += threads) {
        std::vector<std::future<T>> batch;
        for (int i = base; i < std::min(n, base + threads); ++i) batch.push_back(std::async(std::launch::async, task, i));
        for (auto& fut : batch) out.push_back(fut.get());
    }
    return out;
}

} // namespace gt
