#pragma once

#include <array>
#include <string>
#include <vector>

#include "clustval/errors.hpp"

namespace clustval {

enum class Direction { maximize, minimize };

/// Stable identifiers for every relative CVI the library computes.
enum class Cvi {
    aucc,
    auprc,
    auiprc,
    sauprc,
    swc,
    db,
    c_index,
    dunn,
    pbm,
    vrc,
    point_biserial,
    ratkowsky_lance,
};

inline const std::array<Cvi, 12>& all_cvis() {
    static const std::array<Cvi, 12> ids = {
        Cvi::aucc, Cvi::auprc, Cvi::auiprc, Cvi::sauprc,
        Cvi::swc, Cvi::db, Cvi::c_index, Cvi::dunn,
        Cvi::pbm, Cvi::vrc, Cvi::point_biserial, Cvi::ratkowsky_lance,
    };
    return ids;
}

inline std::string to_string(Cvi id) {
    switch (id) {
        case Cvi::aucc: return "aucc";
        case Cvi::auprc: return "auprc";
        case Cvi::auiprc: return "auiprc";
        case Cvi::sauprc: return "sauprc";
        case Cvi::swc: return "swc";
        case Cvi::db: return "db";
        case Cvi::c_index: return "c_index";
        case Cvi::dunn: return "dunn";
        case Cvi::pbm: return "pbm";
        case Cvi::vrc: return "vrc";
        case Cvi::point_biserial: return "point_biserial";
        case Cvi::ratkowsky_lance: return "ratkowsky_lance";
    }
    return "?";
}

inline std::string valid_cvi_ids() {
    std::string out;
    for (Cvi id : all_cvis()) {
        if (!out.empty()) out += ", ";
        out += to_string(id);
    }
    return out;
}

inline Cvi parse_cvi(const std::string& name) {
    for (Cvi id : all_cvis()) {
        if (to_string(id) == name) return id;
    }
    throw usage_error("unknown index id '" + name + "'; valid ids: " + valid_cvi_ids());
}

inline std::vector<Cvi> parse_cvi_list(const std::string& comma_separated) {
    std::vector<Cvi> out;
    std::size_t begin = 0;
    while (begin <= comma_separated.size()) {
        std::size_t comma = comma_separated.find(',', begin);
        std::string token = comma_separated.substr(
            begin, comma == std::string::npos ? std::string::npos : comma - begin);
        if (!token.empty()) out.push_back(parse_cvi(token));
        if (comma == std::string::npos) break;
        begin = comma + 1;
    }
    if (out.empty()) throw usage_error("empty index list; valid ids: " + valid_cvi_ids());
    return out;
}

/// Smaller is better only for db and c_index.
inline Direction direction(Cvi id) {
    return (id == Cvi::db || id == Cvi::c_index) ? Direction::minimize : Direction::maximize;
}

/// True for the classical (non curve-based) indices.
inline bool is_classic(Cvi id) {
    switch (id) {
        case Cvi::aucc:
        case Cvi::auprc:
        case Cvi::auiprc:
        case Cvi::sauprc:
            return false;
        default:
            return true;
    }
}

}  // namespace clustval
