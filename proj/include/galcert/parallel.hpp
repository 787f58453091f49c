#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace galcert {

/// Applies `fn` to every item on up to `workers` threads. Results come back
/// in input order whatever the scheduling; the first exception is rethrown.
template <typename T, typename Fn>
auto parallel_map(const std::vector<T>& items, unsigned workers, Fn fn)
    -> std::vector<std::invoke_result_t<Fn&, const T&>> {
    using R = std::invoke_result_t<Fn&, const T&>;
    std::vector<std::optional<R>> slots(items.size());
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(items.size())));

    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&](std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < items.size(); i += step) {
            try {
                slots[i].emplace(fn(items[i]));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    if (workers <= 1) {
        run(0, 1);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w, workers);
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<R> out;
    out.reserve(items.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

} // namespace galcert
