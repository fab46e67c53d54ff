// Copyright (c) 2026 the kappa developers
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "kappa/corpus.hpp"

#include <fstream>

#include <json.hpp>

namespace kappa {

namespace {

using json = nlohmann::ordered_json;

Int int_from_json(const json& v, const char* where) {
    if (v.is_number_integer())
        return Int(static_cast<long>(v.get<long long>()));
    if (v.is_string())
        try {
            return Int(v.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw ParseError(std::string("invalid integer string in ") + where);
        }
    throw ParseError(std::string("expected integer (or decimal string) in ") + where);
}

json int_to_json(const Int& v) {
    static const Int max_safe = (Int(1) << 53) - 1;
    if (abs(v) <= max_safe)
        return v.get_si();
    return v.get_str();
}

} // namespace

CurveRecord parse_curve_record(const std::string& line) {
    json doc;
    try {
        doc = json::parse(line);
    } catch (const json::parse_error& e) {
        throw ParseError("curve record: " + std::string(e.what()));
    }
    if (!doc.is_object())
        throw ParseError("curve record: expected a JSON object");

    static const std::vector<std::string> allowed = {"label",         "a",
                                                     "rank",          "torsion_order",
                                                     "expected_local_torsion", "source"};
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        bool ok = false;
        for (const auto& k : allowed)
            if (k == key)
                ok = true;
        if (!ok)
            throw ParseError("curve record: unknown field \"" + key + "\"");
    }

    CurveRecord rec;
    if (!doc.contains("label") || !doc["label"].is_string() || doc["label"].get<std::string>().empty())
        throw ParseError("curve record: missing or invalid \"label\"");
    rec.label = doc["label"].get<std::string>();

    if (!doc.contains("a") || !doc["a"].is_array() || doc["a"].size() != 5)
        throw ParseError("curve record: \"a\" must be a 5-element array");
    for (size_t i = 0; i < 5; ++i)
        rec.a[i] = int_from_json(doc["a"][i], "a");

    if (doc.contains("rank")) {
        if (!doc["rank"].is_number_integer() || doc["rank"].get<long long>() < 0)
            throw ParseError("curve record: \"rank\" must be a nonnegative integer");
        rec.rank = doc["rank"].get<int>();
    }
    if (doc.contains("torsion_order")) {
        if (!doc["torsion_order"].is_number_integer() || doc["torsion_order"].get<long long>() < 1)
            throw ParseError("curve record: \"torsion_order\" must be a positive integer");
        rec.torsion_order = doc["torsion_order"].get<int>();
    }
    if (doc.contains("expected_local_torsion")) {
        if (!doc["expected_local_torsion"].is_array())
            throw ParseError("curve record: \"expected_local_torsion\" must be an array");
        std::vector<Int> primes;
        for (const auto& v : doc["expected_local_torsion"])
            primes.push_back(int_from_json(v, "expected_local_torsion"));
        for (size_t i = 1; i < primes.size(); ++i)
            if (primes[i - 1] >= primes[i])
                throw ParseError("curve record: \"expected_local_torsion\" must be strictly increasing");
        rec.expected_local_torsion = std::move(primes);
    }
    if (doc.contains("source")) {
        if (!doc["source"].is_string())
            throw ParseError("curve record: \"source\" must be a string");
        rec.source = doc["source"].get<std::string>();
    }

    rec.curve(); // SingularCurveError if the discriminant vanishes
    return rec;
}

std::string serialize_curve_record(const CurveRecord& rec) {
    json doc;
    doc["label"] = rec.label;
    json arr = json::array();
    for (const auto& v : rec.a)
        arr.push_back(int_to_json(v));
    doc["a"] = arr;
    if (rec.rank)
        doc["rank"] = *rec.rank;
    if (rec.torsion_order)
        doc["torsion_order"] = *rec.torsion_order;
    if (rec.expected_local_torsion) {
        json lt = json::array();
        for (const auto& v : *rec.expected_local_torsion)
            lt.push_back(int_to_json(v));
        doc["expected_local_torsion"] = lt;
    }
    if (rec.source)
        doc["source"] = *rec.source;
    return doc.dump();
}

std::vector<CurveRecord> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("load_corpus: cannot open " + path);
    std::vector<CurveRecord> out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            out.push_back(parse_curve_record(line));
        } catch (const Error& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

const std::vector<CurveRecord>& bundled_corpus() {
    static const std::vector<CurveRecord> corpus =
        load_corpus(std::string(KAPPA_DATA_DIR) + "/curves.jsonl");
    return corpus;
}

std::optional<CurveRecord> resolve_label(const std::string& label, const std::vector<CurveRecord>* extra) {
    if (extra)
        for (const auto& rec : *extra)
            if (rec.label == label)
                return rec;
    for (const auto& rec : bundled_corpus())
        if (rec.label == label)
            return rec;
    return std::nullopt;
}

} // namespace kappa
