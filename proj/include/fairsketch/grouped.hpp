#pragma once

// Grouped data model and the three min-max (socially fair) objectives.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fairsketch/errors.hpp"
#include "fairsketch/linalg.hpp"

namespace fairsketch {

/// l >= 1 groups A^(i) (n_i x d) sharing the feature dimension d.
class GroupedMatrix {
public:
    GroupedMatrix(std::vector<Matrix> groups, std::vector<std::string> labels)
        : groups_(std::move(groups)), labels_(std::move(labels)) {
        validate();
    }

    explicit GroupedMatrix(std::vector<Matrix> groups) : groups_(std::move(groups)) {
        for (std::size_t i = 0; i < groups_.size(); ++i) labels_.push_back(std::to_string(i + 1));
        validate();
    }

    [[nodiscard]] std::size_t size() const { return groups_.size(); }
    [[nodiscard]] Index cols() const { return groups_.front().cols(); }
    [[nodiscard]] Index total_rows() const {
        Index n = 0;
        for (const auto& g : groups_) n += g.rows();
        return n;
    }
    [[nodiscard]] const Matrix& group(std::size_t i) const { return groups_.at(i); }
    [[nodiscard]] const std::vector<Matrix>& groups() const { return groups_; }
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] Matrix stacked() const { return stack_rows(groups_); }

private:
    void validate() const {
        if (groups_.empty()) detail::raise<InvalidParameter>("GroupedMatrix", "need at least one group");
        if (labels_.size() != groups_.size()) {
            detail::raise<ShapeError>("GroupedMatrix", "label count differs from group count");
        }
        const Index d = groups_.front().cols();
        if (d < 1) detail::raise<ShapeError>("GroupedMatrix", "groups need at least one column");
        for (const auto& g : groups_) {
            if (g.cols() != d) detail::raise<ShapeError>("GroupedMatrix", "groups disagree on column count");
            if (g.rows() < 1) detail::raise<ShapeError>("GroupedMatrix", "every group needs a row");
            require_finite(g, "GroupedMatrix");
        }
        std::set<std::string> seen(labels_.begin(), labels_.end());
        if (seen.size() != labels_.size()) detail::raise<InvalidParameter>("GroupedMatrix", "labels must be distinct");
    }

    std::vector<Matrix> groups_;
    std::vector<std::string> labels_;
};

/// Per-group regression targets b^(i), paired with a GroupedMatrix.
struct GroupedLabels {
    std::vector<Vector> targets;

    [[nodiscard]] Vector stacked() const { return stack_vectors(targets); }
};

inline void check_pairing(const GroupedMatrix& data, const GroupedLabels& labels, const char* where) {
    if (labels.targets.size() != data.size()) detail::raise<ShapeError>(where, "label group count mismatch");
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (labels.targets[i].size() != data.group(i).rows()) {
            detail::raise<ShapeError>(where, "targets of group " + std::to_string(i) + " have wrong length");
        }
        require_finite(labels.targets[i], where);
    }
}

/// ||A^(i) V^+ V - A^(i)||_F for every group (squared if requested).
inline std::vector<double> group_lra_costs(const GroupedMatrix& data, const Matrix& v, bool squared = false) {
    if (v.cols() != data.cols()) {
        detail::raise<ShapeError>("fair_lra_cost", "V has " + std::to_string(v.cols()) +
                                                       " columns, data has " + std::to_string(data.cols()));
    }
    require_finite(v, "fair_lra_cost");
    const Matrix proj = pseudoinverse(v) * v;
    std::vector<double> costs;
    costs.reserve(data.size());
    for (const auto& a : data.groups()) {
        const double r = (a * proj - a).squaredNorm();
        costs.push_back(squared ? r : std::sqrt(r));
    }
    return costs;
}

inline double fair_lra_cost(const GroupedMatrix& data, const Matrix& v, bool squared = false) {
    const auto costs = group_lra_costs(data, v, squared);
    return *std::max_element(costs.begin(), costs.end());
}

inline Matrix select_columns(const Matrix& a, const std::vector<Index>& indices) {
    Matrix out(a.rows(), static_cast<Index>(indices.size()));
    for (std::size_t j = 0; j < indices.size(); ++j) out.col(static_cast<Index>(j)) = a.col(indices[j]);
    return out;
}

inline void check_column_indices(const std::vector<Index>& indices, Index d, const char* where) {
    if (indices.empty()) detail::raise<InvalidParameter>(where, "column index set must be non-empty");
    std::set<Index> seen;
    for (Index j : indices) {
        if (j < 0 || j >= d) detail::raise<InvalidParameter>(where, "column index " + std::to_string(j) + " out of range");
        if (!seen.insert(j).second) detail::raise<InvalidParameter>(where, "duplicate column index");
    }
}

/// max_i ||A^(i)[:, S] M^(i) - A^(i)||_F.
inline double fair_css_cost(const GroupedMatrix& data, const std::vector<Index>& indices,
                            const std::vector<Matrix>& factors, bool squared = false) {
    check_column_indices(indices, data.cols(), "fair_css_cost");
    if (factors.size() != data.size()) detail::raise<ShapeError>("fair_css_cost", "need one factor per group");
    double worst = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const Matrix& m = factors[i];
        if (m.rows() != static_cast<Index>(indices.size()) || m.cols() != data.cols()) {
            detail::raise<ShapeError>("fair_css_cost", "factor " + std::to_string(i) + " must be |S| x d");
        }
        const Matrix& a = data.group(i);
        const double r = (select_columns(a, indices) * m - a).squaredNorm();
        worst = std::max(worst, squared ? r : std::sqrt(r));
    }
    return worst;
}

enum class RegressionNorm { L1, L2 };

inline double residual_norm(const Vector& r, RegressionNorm norm) {
    return norm == RegressionNorm::L1 ? r.lpNorm<1>() : r.norm();
}

inline std::vector<double> group_regression_costs(const GroupedMatrix& data, const GroupedLabels& labels,
                                                  const Vector& x, RegressionNorm norm) {
    check_pairing(data, labels, "fair_regression_cost");
    if (x.size() != data.cols()) detail::raise<ShapeError>("fair_regression_cost", "x has wrong length");
    std::vector<double> costs;
    costs.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        costs.push_back(residual_norm(data.group(i) * x - labels.targets[i], norm));
    }
    return costs;
}

/// max_i ||A^(i) x - b^(i)|| in L1 or L2.
inline double fair_regression_cost(const GroupedMatrix& data, const GroupedLabels& labels, const Vector& x,
                                   RegressionNorm norm) {
    const auto costs = group_regression_costs(data, labels, x, norm);
    return *std::max_element(costs.begin(), costs.end());
}

/// One group per distinct label, groups ordered by first appearance, rows in
/// input order within each group.
inline GroupedMatrix split_by_group(const Matrix& rows, const std::vector<std::string>& group_col) {
    if (rows.rows() == 0) detail::raise<InvalidParameter>("split_by_group", "no rows");
    if (static_cast<Index>(group_col.size()) != rows.rows()) {
        detail::raise<ShapeError>("split_by_group", "label column length differs from row count");
    }
    std::vector<std::string> order;
    std::map<std::string, std::vector<Index>> members;
    for (Index r = 0; r < rows.rows(); ++r) {
        auto [it, fresh] = members.try_emplace(group_col[static_cast<std::size_t>(r)]);
        if (fresh) order.push_back(it->first);
        it->second.push_back(r);
    }
    std::vector<Matrix> groups;
    for (const auto& label : order) {
        const auto& idx = members[label];
        Matrix g(static_cast<Index>(idx.size()), rows.cols());
        for (std::size_t j = 0; j < idx.size(); ++j) g.row(static_cast<Index>(j)) = rows.row(idx[j]);
        groups.push_back(std::move(g));
    }
    return GroupedMatrix(std::move(groups), order);
}

}  // namespace fairsketch
