#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bgd/matrix.hpp"

namespace bgd {

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Machine-readable verification record. Every axiom that is checked leaves
// one entry, so a failing structure reports all violated identities, each
// with a basis witness and the two offending matrices.

struct ReportEntry {
    std::string label;
    bool ok = true;
    std::vector<int> witness;  // decoded basis tuple of the first mismatch
    std::vector<std::vector<std::string>> lhs, rhs;
    std::string note;
};

struct Report {
    std::string subject;
    std::vector<ReportEntry> entries;
    std::vector<std::pair<std::string, std::string>> derived;

    bool pass() const {
        for (const auto& e : entries)
            if (!e.ok) return false;
        return true;
    }

    void note(const std::string& label, bool ok, const std::string& msg = "") {
        ReportEntry e;
        e.label = label;
        e.ok = ok;
        e.note = msg;
        entries.push_back(std::move(e));
    }

    void set_derived(const std::string& key, const std::string& value) {
        derived.emplace_back(key, value);
    }

    void absorb(const Report& o, const std::string& prefix = "") {
        for (auto e : o.entries) {
            if (!prefix.empty()) e.label = prefix + "." + e.label;
            entries.push_back(std::move(e));
        }
        for (const auto& d : o.derived) {
            derived.emplace_back(prefix.empty() ? d.first : prefix + "." + d.first, d.second);
        }
    }
};

// Decodes a flat index into the multi-index of a tensor basis vector.
inline std::vector<int> decode_index(int idx, const std::vector<int>& dims) {
    std::vector<int> out(dims.size(), 0);
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        if (dims[k] == 0) continue;
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
    return out;
}

template <class F>
std::vector<std::vector<std::string>> render(const Mat<F>& m) {
    std::vector<std::vector<std::string>> out(m.rows(), std::vector<std::string>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out[i][j] = m.field().to_string(m.at(i, j));
    return out;
}

// Central assertion: compare two maps that must agree exactly. domain_dims
// describe the tensor factorization of the common domain, used to decode the
// witness column.
template <class F>
bool check_equal(Report& rep, const std::string& label, const Mat<F>& lhs, const Mat<F>& rhs,
                 const std::vector<int>& domain_dims = {}) {
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
        throw DimensionMismatch(label + ": comparing a " + std::to_string(lhs.rows()) + "x" +
                                std::to_string(lhs.cols()) + " map with a " +
                                std::to_string(rhs.rows()) + "x" + std::to_string(rhs.cols()) +
                                " map");
    ReportEntry e;
    e.label = label;
    auto diff = Mat<F>::first_difference(lhs, rhs);
    if (diff) {
        e.ok = false;
        e.witness = domain_dims.empty() ? std::vector<int>{diff->second}
                                        : decode_index(diff->second, domain_dims);
        e.lhs = render(lhs);
        e.rhs = render(rhs);
    }
    rep.entries.push_back(std::move(e));
    return !diff;
}

} // namespace bgd
