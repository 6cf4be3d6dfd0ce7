#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "farey/backend.hpp"
#include "farey/summation.hpp"
#include "farey/tree.hpp"

namespace farey {

namespace detail {

inline unsigned resolve_threads(unsigned requested, std::size_t tasks) {
    unsigned n = requested == 0 ? std::thread::hardware_concurrency() : requested;
    if (n == 0) n = 1;
    if (n > tasks) n = static_cast<unsigned>(tasks);
    return n;
}

// Runs `body(task_index)` for every task on `threads` workers pulling from
// a shared counter. Partials land in per-task slots, so scheduling order
// never affects the combined result.
template <class Body>
void run_tasks(std::size_t task_count, unsigned threads, const Body& body) {
    if (threads <= 1) {
        for (std::size_t i = 0; i < task_count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= task_count) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

// Balanced recursive reduction keeps rational operand sizes logarithmic in
// the leaf count instead of linear.
template <class Term>
Rational fold_subtree_exact(std::uint64_t d_left, std::uint64_t d_right, Level depth,
                            std::uint64_t base, const Term& term) {
    if (depth == 0) return term(base, NeighborPair{d_left, d_right});
    const std::uint64_t med = d_left + d_right;
    const Level below = depth - 1;
    Rational left = fold_subtree_exact(d_left, med, below, base, term);
    left += fold_subtree_exact(med, d_right, below, base + index_stride(below), term);
    return left;
}

}  // namespace detail

// Folds term(leaf_index, pair) over the 2^depth pairs at `depth`, split at
// the 2^min(split_depth, depth) subtree roots. Each task accumulates its
// subtree serially in leaf order; partials are combined in root order by a
// compensated combiner. The result is therefore a pure function of
// (depth, term, summation, split_depth): bit-identical for any worker
// count, and bit-identical to the serial run with the same split depth.
//
// When `backend.checkpoint` is set, each completed task is appended to the
// sidecar and recorded tasks are restored instead of recomputed.
template <class Term>
double parallel_fold_float(Level depth, const Term& term, const Backend& backend) {
    const auto roots = split_level(depth, backend.split_depth, backend.max_level);
    const Level below = depth - (backend.split_depth < depth ? backend.split_depth : depth);

    std::vector<TaskPartial> partials(roots.size());
    const std::uint64_t id_base =
        backend.checkpoint ? backend.checkpoint->reserve_block(roots.size()) : 0;

    detail::run_tasks(
        roots.size(), detail::resolve_threads(backend.threads, roots.size()),
        [&](std::size_t i) {
            if (backend.checkpoint) {
                if (auto cached = backend.checkpoint->lookup(id_base + i)) {
                    partials[i] = *cached;
                    return;
                }
            }
            if (backend.summation == Summation::compensated) {
                NeumaierAccumulator acc;
                stream_subtree(roots[i].root, below, roots[i].base_index,
                               [&](std::uint64_t idx, NeighborPair p) { acc.add(term(idx, p)); });
                partials[i] = TaskPartial{acc.sum(), acc.compensation()};
            } else {
                PairwiseAccumulator acc;
                stream_subtree(roots[i].root, below, roots[i].base_index,
                               [&](std::uint64_t idx, NeighborPair p) { acc.add(term(idx, p)); });
                partials[i] = TaskPartial{acc.value(), 0.0};
            }
            if (backend.checkpoint) backend.checkpoint->record(id_base + i, partials[i]);
        });

    NeumaierAccumulator combined;
    for (const TaskPartial& p : partials) combined.add(NeumaierAccumulator(p.sum, p.compensation));
    return combined.value();
}

// Exact-rational counterpart. Rational addition is associative, so the
// balanced per-subtree reduction and the root-order combination return the
// same value as any serial evaluation.
template <class Term>
Rational parallel_fold_exact(Level depth, const Term& term, const Backend& backend) {
    if (backend.checkpoint)
        throw std::invalid_argument("checkpointing requires the floating backend");
    const auto roots = split_level(depth, backend.split_depth, backend.max_level);
    const Level below = depth - (backend.split_depth < depth ? backend.split_depth : depth);

    std::vector<Rational> partials(roots.size());
    detail::run_tasks(roots.size(), detail::resolve_threads(backend.threads, roots.size()),
                      [&](std::size_t i) {
                          partials[i] = detail::fold_subtree_exact(
                              roots[i].root.d_left, roots[i].root.d_right, below,
                              roots[i].base_index, term);
                      });

    Rational total = 0;
    for (Rational& p : partials) total += p;
    return total;
}

}  // namespace farey
