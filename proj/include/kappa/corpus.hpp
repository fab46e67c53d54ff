// Copyright (c) 2026 the kappa developers
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#ifndef KAPPA_CORPUS_HPP
#define KAPPA_CORPUS_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "kappa/weierstrass.hpp"

namespace kappa {

// One fixture row: schema
//   {label, a, rank?, torsion_order?, expected_local_torsion?, source?}
// Unknown fields are rejected; integers may arrive as decimal strings
// when they exceed 2^53 - 1.
struct CurveRecord {
    std::string label;
    std::array<Int, 5> a{};
    std::optional<int> rank;
    std::optional<int> torsion_order;
    std::optional<std::vector<Int>> expected_local_torsion; // strictly increasing
    std::optional<std::string> source;

    WeierstrassCurve curve() const { return {a[0], a[1], a[2], a[3], a[4]}; }
};

CurveRecord parse_curve_record(const std::string& line);
std::string serialize_curve_record(const CurveRecord& rec);

std::vector<CurveRecord> load_corpus(const std::string& path);
const std::vector<CurveRecord>& bundled_corpus();

// Bare labels resolve only against fixtures; extra (if given) is searched
// before the bundled corpus.
std::optional<CurveRecord> resolve_label(const std::string& label,
                                         const std::vector<CurveRecord>* extra = nullptr);

} // namespace kappa

#endif
