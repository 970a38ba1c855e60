#include "lexicluster/feature_matrix.hpp"

#include "lexicluster/error.hpp"
#include "lexicluster/text_io.hpp"

#include <algorithm>
#include <cmath>

namespace lexicluster {

FeatureMatrix weight_idf(const SparseBag& bag) {
    FeatureMatrix m;
    m.D = bag.D;
    m.dimension = bag.W;
    m.rows.resize(bag.D);
    if (bag.D == 0) return m;

    std::vector<std::uint32_t> df(static_cast<std::size_t>(bag.W) + 1, 0);
    for (const auto& t : bag.triples) ++df.at(t.word);

    const double n_docs = bag.D;
    for (const auto& t : bag.triples) {
        double idf = std::log(n_docs / df[t.word]);
        double w = static_cast<double>(t.count) * idf;
        if (w > 0.0) m.rows[t.doc - 1].push_back({t.word, w});
    }
    return m;
}

FeatureMatrix normalize(FeatureMatrix m) {
    for (auto& row : m.rows) {
        double n = norm(row);
        if (n == 0.0) continue;
        for (auto& e : row) e.weight /= n;
    }
    return m;
}

std::string write_matrix(const FeatureMatrix& m) {
    std::string out = std::to_string(m.D) + ' ' + std::to_string(m.dimension) + '\n';
    for (std::size_t d = 0; d < m.rows.size(); ++d) {
        if (m.rows[d].empty()) continue;
        out += std::to_string(d + 1);
        for (const auto& e : m.rows[d]) {
            out += ' ';
            out += std::to_string(e.feature);
            out += ':';
            out += format_real(e.weight);
        }
        out += '\n';
    }
    return out;
}

FeatureMatrix parse_matrix(std::string_view text) {
    LineReader lines(text);
    auto header = lines.next();
    if (!header) throw Error(Errc::malformed_line, "matrix: missing 'D dimension' header");
    auto hf = split_fields(*header);
    if (hf.size() != 2) throw Error(Errc::malformed_line, "matrix line 1: expected 'D dimension'");
    FeatureMatrix m;
    m.D = static_cast<std::uint32_t>(parse_count(hf[0], 1, true));
    m.dimension = static_cast<std::uint32_t>(parse_count(hf[1], 1, true));
    m.rows.resize(m.D);
    std::vector<bool> seen(m.D, false);
    while (auto line = lines.next()) {
        if (line->empty()) continue;
        auto n = lines.line_number();
        auto fields = split_fields(*line);
        auto doc = parse_count(fields[0], n, false);
        if (doc > m.D) throw Error(Errc::feature_out_of_range, "matrix line " + std::to_string(n) + ": doc exceeds D");
        if (seen[doc - 1]) throw Error(Errc::duplicate_doc_id, "matrix line " + std::to_string(n) + ": repeated doc");
        seen[doc - 1] = true;
        auto& row = m.rows[doc - 1];
        for (std::size_t f = 1; f < fields.size(); ++f) {
            auto [id_text, w_text] = split_pair(fields[f], ':', n);
            auto id = static_cast<FeatureId>(parse_count(id_text, n, false));
            if (id > m.dimension) {
                throw Error(Errc::feature_out_of_range, "matrix line " + std::to_string(n) + ": feature exceeds dimension");
            }
            double w = parse_real(w_text, n);
            if (w < 0.0) throw Error(Errc::malformed_line, "matrix line " + std::to_string(n) + ": negative weight");
            row.push_back({id, w});
        }
        std::sort(row.begin(), row.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.feature < b.feature; });
        for (std::size_t k = 1; k < row.size(); ++k) {
            if (row[k].feature == row[k - 1].feature) {
                throw Error(Errc::duplicate_feature, "matrix line " + std::to_string(n) + ": repeated feature");
            }
        }
    }
    return m;
}

}  // namespace lexicluster
