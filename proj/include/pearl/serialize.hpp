// Canonical JSON documents: complexes, structures, bundles, disk data and
// minimal models. Keys are sorted and the output has no optional whitespace,
// so parse followed by serialize reproduces a canonical file byte for byte.
#pragma once

#include "pearl/chaincx.hpp"
#include "pearl/classify.hpp"
#include "pearl/minimal.hpp"
#include "pearl/qstruct.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace pearl {

inline constexpr int kSchemaVersion = 1;

enum class DocKind { Complex, Structure, Bundle, DiskData, MinimalModel };
std::string to_string(DocKind k);

// Golden values a bundle is checked against.
struct Expected {
    std::optional<Status> status;
    std::optional<int> l;  // generation hypothesis used for the dichotomy
    std::optional<long long> q, K;
    std::optional<std::map<std::size_t, Comb>> incl;  // i_L, keyed by lag index
    std::optional<std::vector<int>> d1;
    std::optional<long long> point_k;
    std::optional<std::size_t> qh_rank;  // total rank over Lambda
    std::optional<Divisibility> divisibility;
    std::map<std::string, Rational> bounds;  // "name <= formula" -> value
    friend bool operator==(const Expected&, const Expected&) = default;
};

struct InstanceBundle {
    std::string name;
    InstanceMeta meta;
    PearlComplex complex;
    QuantumStructure structure;
    Expected expected;
    std::optional<DiskClassData> disk_data;
    friend bool operator==(const InstanceBundle&, const InstanceBundle&) = default;
};

struct Document {
    DocKind kind = DocKind::Complex;
    InstanceMeta meta;
    PearlComplex complex;            // Complex
    QuantumStructure structure;      // Structure
    DiskClassData disk_data;         // DiskData
    std::optional<MinimalModel> model;  // MinimalModel
    InstanceBundle bundle;           // Bundle
};

// Throws ParseError on malformed JSON or schema violations.
Document parse_document(std::string_view text);
Document load_document(const std::string& path);  // ParseError also for unreadable files
std::string serialize(const Document& d);         // ends with a newline

std::string serialize_complex(const InstanceMeta& meta, const PearlComplex& c);
std::string serialize_structure(const QuantumStructure& s);
std::string serialize_bundle(const InstanceBundle& b);
std::string serialize_disk_data(const InstanceMeta& meta, const DiskClassData& d);
std::string serialize_minimal(const InstanceMeta& meta, const MinimalModel& m);

// Complex ring for a document: Lambda+ over Z2 with the meta's N_L and C_M.
RingDescriptor complex_ring(const InstanceMeta& meta);

}  // namespace pearl
