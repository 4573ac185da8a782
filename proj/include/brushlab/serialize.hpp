#pragma once

#include <string>

#include <json.hpp>

#include "brushlab/transform.hpp"

namespace brushlab {

// Wire format: an array of records {"j": int, "k": [int...], "n": [int...],
// "re": double, "im": double}, one per coefficient.
inline nlohmann::json to_json(const CoefficientSet& coeffs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [idx, c] : coeffs.entries) {
        nlohmann::json rec;
        rec["j"] = idx.j;
        rec["k"] = idx.k;
        rec["n"] = idx.n;
        rec["re"] = c.real();
        rec["im"] = c.imag();
        arr.push_back(std::move(rec));
    }
    return arr;
}

// Rebuilds the set; the truncation descriptor is the tight hull of the records.
inline CoefficientSet coefficient_set_from_json(const nlohmann::json& arr) {
    if (!arr.is_array()) throw config_error("coefficient set: expected a JSON array");
    CoefficientSet set;
    int j_lo = 0, j_hi = 0, n_max = 1;
    bool first = true;
    std::vector<std::pair<BrushletIndex, Complex>> records;
    for (const auto& rec : arr) {
        BrushletIndex idx;
        try {
            idx.j = rec.at("j").get<int>();
            idx.k = rec.at("k").get<std::vector<int>>();
            idx.n = rec.at("n").get<std::vector<int>>();
            const double re = rec.at("re").get<double>();
            const double im = rec.at("im").get<double>();
            records.emplace_back(idx, Complex(re, im));
        } catch (const nlohmann::json::exception& e) {
            throw config_error(std::string("coefficient set: malformed record: ") + e.what());
        }
        if (first) {
            j_lo = j_hi = idx.j;
            first = false;
        }
        j_lo = std::min(j_lo, idx.j);
        j_hi = std::max(j_hi, idx.j);
        for (int ni : idx.n) n_max = std::max(n_max, ni + 1);
    }
    set.trunc = Truncation{j_lo, j_hi, n_max};
    for (auto& [idx, c] : records) set.set(idx, c);
    return set;
}

}  // namespace brushlab
