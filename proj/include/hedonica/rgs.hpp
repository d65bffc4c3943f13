#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hedonica/types.hpp"

namespace hedonica {

std::uint64_t bell_number(int n);

// Enumerates set partitions of {0..n-1} in restricted-growth-string order.
class PartitionEnumerator {
public:
    explicit PartitionEnumerator(int n);

    // Current restricted growth string; labels()[i] is the block of agent i.
    const std::vector<int>& labels() const { return a_; }

    Partition current() const;

    // Advance to the next partition; false when exhausted.
    bool next();

    bool done() const { return done_; }

private:
    int n_;
    std::vector<int> a_;  // a_[i] <= max(a_[0..i-1]) + 1
    std::vector<int> m_;  // prefix maxima
    bool done_ = false;
};

// Calls fn for every partition; fn returns false to stop early.
// Workers can split the space by (worker, stride): worker w visits
// partitions with index ≡ w (mod stride) in enumeration order.
void for_each_partition(int n, const std::function<bool(const std::vector<int>&)>& fn,
                        int worker = 0, int stride = 1);

Partition partition_from_labels(const std::vector<int>& labels);

}  // namespace hedonica
