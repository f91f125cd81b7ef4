#include "egognn/ego_operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "egognn/error.hpp"

namespace egognn {

namespace {

struct LocalEgo {
    std::vector<std::size_t> members;
    std::vector<std::size_t> row_offsets;
    std::vector<std::size_t> cols;
    std::vector<double> normalized;
};

LocalEgo build_local(const Graph& g, std::size_t j, std::vector<std::ptrdiff_t>& local_of) {
    LocalEgo ego;
    ego.members = ego_members(g, j);
    const std::size_t k = ego.members.size();
    for (std::size_t r = 0; r < k; ++r) local_of[ego.members[r]] = static_cast<std::ptrdiff_t>(r);

    ego.row_offsets.assign(1, 0);
    for (std::size_t r = 0; r < k; ++r) {
        const std::size_t u = ego.members[r];
        bool placed_self = false;
        for (std::size_t v : g.neighbors(u)) {
            if (!placed_self && v > u) {
                ego.cols.push_back(r);
                placed_self = true;
            }
            if (local_of[v] >= 0) ego.cols.push_back(static_cast<std::size_t>(local_of[v]));
        }
        if (!placed_self) ego.cols.push_back(r);
        ego.row_offsets.push_back(ego.cols.size());
    }
    for (std::size_t u : ego.members) local_of[u] = -1;

    std::vector<double> deg(k);
    for (std::size_t r = 0; r < k; ++r) deg[r] = static_cast<double>(ego.row_offsets[r + 1] - ego.row_offsets[r]);
    ego.normalized.resize(ego.cols.size());
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t e = ego.row_offsets[r]; e < ego.row_offsets[r + 1]; ++e)
            ego.normalized[e] = 1.0 / std::sqrt(deg[r] * deg[ego.cols[e]]);
    return ego;
}

} // namespace

EgoOperator::EgoOperator(const Graph& g) : n_(g.n()) {
    std::vector<LocalEgo> egos(n_);
    const auto n = static_cast<std::ptrdiff_t>(n_);
#pragma omp parallel
    {
        std::vector<std::ptrdiff_t> local_of(n_, -1);
#pragma omp for schedule(dynamic, 16)
        for (std::ptrdiff_t j = 0; j < n; ++j) egos[static_cast<std::size_t>(j)] = build_local(g, static_cast<std::size_t>(j), local_of);
    }
    for (auto& e : egos) {
        max_ego_size_ = std::max(max_ego_size_, e.members.size());
        members_.insert(members_.end(), e.members.begin(), e.members.end());
        member_offsets_.push_back(members_.size());
        row_offsets_.insert(row_offsets_.end(), e.row_offsets.begin(), e.row_offsets.end());
        row_offset_base_.push_back(row_offsets_.size());
        cols_.insert(cols_.end(), e.cols.begin(), e.cols.end());
        normalized_.insert(normalized_.end(), e.normalized.begin(), e.normalized.end());
        entry_base_.push_back(cols_.size());
    }
}

EgoOperator::View EgoOperator::ego(std::size_t j) const {
    const std::size_t m0 = member_offsets_[j];
    const std::size_t k = member_offsets_[j + 1] - m0;
    const std::size_t e0 = entry_base_[j];
    const std::size_t ne = entry_base_[j + 1] - e0;
    return View{
        {members_.data() + m0, k},
        {row_offsets_.data() + row_offset_base_[j], k + 1},
        {cols_.data() + e0, ne},
        {normalized_.data() + e0, ne},
    };
}

DenseMatrix EgoOperator::sum(const DenseMatrix& h, int p, bool normalized, Exec exec, PropagationReport* report) const {
    if (h.rows() != n_) {
        throw DimensionError("ego propagation: representations have " + std::to_string(h.rows()) + " rows for " +
                             std::to_string(n_) + " nodes");
    }
    if (p < 1) throw Error("ego propagation: scale p must be >= 1, got " + std::to_string(p));
    const auto start = std::chrono::steady_clock::now();
    DenseMatrix out(n_, h.cols());
    const std::size_t peak = exec == Exec::serial ? kernels::serial::ego_sum(*this, h, p, normalized, out)
                                                  : kernels::omp::ego_sum(*this, h, p, normalized, out);
    if (report) {
        report->peak_block_rows = std::max(report->peak_block_rows, peak);
        report->wall_time += std::chrono::steady_clock::now() - start;
    }
    return out;
}

DenseMatrix EgoOperator::apply(const DenseMatrix& h, int p, bool normalized, Exec exec, PropagationReport* report) const {
    DenseMatrix out = sum(h, p, normalized, exec, report);
    for (std::size_t i = 0; i < n_; ++i) {
        const double denom = static_cast<double>(membership(i));
        for (double& v : out.row(i)) v /= denom;
    }
    return out;
}

DenseMatrix EgoOperator::apply_transpose(const DenseMatrix& g, int p, bool normalized, Exec exec) const {
    if (g.rows() != n_) throw DimensionError("ego adjoint: row count mismatch");
    DenseMatrix scaled = g;
    for (std::size_t i = 0; i < n_; ++i) {
        const double denom = static_cast<double>(membership(i));
        for (double& v : scaled.row(i)) v /= denom;
    }
    return sum(scaled, p, normalized, exec);
}

} // namespace egognn
