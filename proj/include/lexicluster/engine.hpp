#pragma once

// In-process MapReduce. Map tasks run one partition at a time on a pool of
// worker threads; after all maps finish, emissions are grouped by key and
// reduced in ascending key order. Reduce inputs are ordered by (partition
// index, emission order), so results do not depend on the worker count.

#include "lexicluster/error.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

namespace lexicluster {

template <typename K, typename V>
struct KeyValue {
    K key;
    V value;

    friend bool operator==(const KeyValue&, const KeyValue&) = default;
};

template <typename InK, typename InV, typename MidK, typename MidV, typename OutK = MidK, typename OutV = MidV>
struct JobSpec {
    using Input = KeyValue<InK, InV>;
    using Intermediate = KeyValue<MidK, MidV>;
    using Output = KeyValue<OutK, OutV>;

    std::function<std::vector<Intermediate>(const InK&, const InV&)> map;
    std::function<std::vector<Output>(const MidK&, const std::vector<MidV>&)> reduce;
};

/// Contiguous split into n parts; earlier parts take the remainder, so sizes
/// differ by at most one.
template <typename T>
std::vector<std::vector<T>> partition(const std::vector<T>& records, std::size_t n) {
    if (n < 1) throw Error(Errc::invalid_argument, "partition count must be >= 1");
    std::vector<std::vector<T>> parts(n);
    std::size_t base = records.size() / n;
    std::size_t extra = records.size() % n;
    std::size_t pos = 0;
    for (std::size_t p = 0; p < n; ++p) {
        std::size_t len = base + (p < extra ? 1 : 0);
        parts[p].assign(records.begin() + static_cast<std::ptrdiff_t>(pos),
                        records.begin() + static_cast<std::ptrdiff_t>(pos + len));
        pos += len;
    }
    return parts;
}

/// LEXICLUSTER_WORKERS if set to a positive integer, else hardware concurrency.
std::size_t default_worker_count();

namespace detail {

template <typename T>
std::string describe_key(const T& key) {
    if constexpr (requires(std::ostream& os, const T& k) { os << k; }) {
        std::ostringstream ss;
        ss << key;
        return ss.str();
    } else {
        return "<opaque>";
    }
}

}  // namespace detail

class Engine {
public:
    explicit Engine(std::size_t workers = default_worker_count()) : workers_(std::max<std::size_t>(1, workers)) {}

    std::size_t workers() const { return workers_; }

    template <typename InK, typename InV, typename MidK, typename MidV, typename OutK, typename OutV>
    std::vector<KeyValue<OutK, OutV>> run_job(const JobSpec<InK, InV, MidK, MidV, OutK, OutV>& job,
                                              const std::vector<std::vector<KeyValue<InK, InV>>>& partitions) const {
        using Intermediate = KeyValue<MidK, MidV>;
        const std::size_t n_parts = partitions.size();

        std::vector<std::vector<Intermediate>> emitted(n_parts);
        std::vector<std::exception_ptr> failures(n_parts);
        std::vector<std::string> failed_record(n_parts);

        auto run_partition = [&](std::size_t p) {
            const auto& records = partitions[p];
            for (std::size_t r = 0; r < records.size(); ++r) {
                try {
                    auto out = job.map(records[r].key, records[r].value);
                    for (auto& kv : out) emitted[p].push_back(std::move(kv));
                } catch (...) {
                    failures[p] = std::current_exception();
                    failed_record[p] = "partition " + std::to_string(p) + ", record " + std::to_string(r) +
                                       ", key " + detail::describe_key(records[r].key);
                    return;
                }
            }
        };

        std::size_t n_threads = std::min(workers_, n_parts);
        if (n_threads <= 1) {
            for (std::size_t p = 0; p < n_parts; ++p) run_partition(p);
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::jthread> pool;
            pool.reserve(n_threads);
            for (std::size_t t = 0; t < n_threads; ++t) {
                pool.emplace_back([&] {
                    for (std::size_t p = next.fetch_add(1); p < n_parts; p = next.fetch_add(1)) run_partition(p);
                });
            }
        }

        // Report the lowest failing partition.
        for (std::size_t p = 0; p < n_parts; ++p) {
            if (failures[p]) rethrow_as_job_error(failures[p], "map failed at " + failed_record[p]);
        }

        std::map<MidK, std::vector<MidV>> groups;
        for (auto& part : emitted) {
            for (auto& kv : part) groups[kv.key].push_back(std::move(kv.value));
        }

        std::vector<KeyValue<OutK, OutV>> output;
        for (const auto& [key, values] : groups) {
            try {
                auto out = job.reduce(key, values);
                for (auto& kv : out) output.push_back(std::move(kv));
            } catch (...) {
                rethrow_as_job_error(std::current_exception(), "reduce failed at key " + detail::describe_key(key));
            }
        }
        return output;
    }

private:
    [[noreturn]] static void rethrow_as_job_error(std::exception_ptr e, const std::string& where) {
        try {
            std::rethrow_exception(e);
        } catch (const std::exception& inner) {
            throw Error(Errc::job_failed, where + ": " + inner.what());
        } catch (...) {
            throw Error(Errc::job_failed, where + ": unknown exception");
        }
    }

    std::size_t workers_;
};

}  // namespace lexicluster
