#include "hedonica/rgs.hpp"

#include <stdexcept>

namespace hedonica {

std::uint64_t bell_number(int n) {
    if (n < 0) throw std::invalid_argument("bell_number of negative n");
    // Bell triangle.
    std::vector<std::uint64_t> row{1};
    for (int i = 1; i <= n; ++i) {
        std::vector<std::uint64_t> next;
        next.reserve(i + 1);
        next.push_back(row.back());
        for (std::uint64_t v : row) next.push_back(next.back() + v);
        row = std::move(next);
    }
    return row.front();
}

PartitionEnumerator::PartitionEnumerator(int n) : n_(n), a_(n, 0), m_(n, 0) {
    if (n < 1) throw std::invalid_argument("partition enumeration needs n >= 1");
}

Partition PartitionEnumerator::current() const { return partition_from_labels(a_); }

bool PartitionEnumerator::next() {
    if (done_) return false;
    for (int i = n_ - 1; i >= 1; --i) {
        if (a_[i] <= m_[i - 1]) {
            ++a_[i];
            m_[i] = std::max(m_[i - 1], a_[i]);
            for (int j = i + 1; j < n_; ++j) {
                a_[j] = 0;
                m_[j] = m_[i];
            }
            return true;
        }
    }
    done_ = true;
    return false;
}

void for_each_partition(int n, const std::function<bool(const std::vector<int>&)>& fn,
                        int worker, int stride) {
    PartitionEnumerator e(n);
    std::uint64_t index = 0;
    do {
        if (stride <= 1 || static_cast<int>(index % stride) == worker)
            if (!fn(e.labels())) return;
        ++index;
    } while (e.next());
}

Partition partition_from_labels(const std::vector<int>& labels) {
    int max_label = -1;
    for (int l : labels) max_label = std::max(max_label, l);
    Partition p;
    p.blocks.assign(max_label + 1, {});
    for (Agent i = 0; i < static_cast<int>(labels.size()); ++i)
        p.blocks[labels[i]].push_back(i);
    return p;
}

}  // namespace hedonica
