#pragma once

// JSON bridge for the batch front end. Cones and Poisson structures come in
// as documents, reports go out as ordered objects so identical runs emit
// identical bytes. Parsing is eager and names the offending field in the
// exception message; rationals travel as "p/q" strings in both directions.
// The small command-line value parsers (degree lists, degree boxes) live
// here too so they stay unit-testable without spawning a process.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "toricdef/quantize.hpp"

namespace toricdef {

using Json = nlohmann::ordered_json;

namespace detail {

inline long long json_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer())
        throw std::domain_error(where + ": expected an integer");
    return j.get<long long>();
}

}  // namespace detail

inline LVec lvec_from_json(const Json& j, const std::string& where) {
    if (!j.is_array())
        throw std::domain_error(where + ": expected an array of integers");
    LVec out;
    for (const auto& entry : j) out.push_back(detail::json_int(entry, where));
    return out;
}

// Schema: {"lattice_rank": n, "rays": [[int,...],...], "torus_rank": k}.
// The torus rank is optional and defaults to zero.
inline Cone cone_from_json(const Json& j) {
    if (!j.is_object())
        throw std::domain_error("cone: expected an object");
    if (!j.contains("lattice_rank") || !j.contains("rays"))
        throw std::domain_error("cone: required fields are lattice_rank and rays");
    long long rank = detail::json_int(j.at("lattice_rank"), "cone.lattice_rank");
    if (rank <= 0)
        throw std::domain_error("cone.lattice_rank: must be positive");
    const Json& jr = j.at("rays");
    if (!jr.is_array())
        throw std::domain_error("cone.rays: expected an array of rays");
    std::vector<LVec> rays;
    for (const auto& row : jr) rays.push_back(lvec_from_json(row, "cone.rays"));
    long long torus = 0;
    if (j.contains("torus_rank"))
        torus = detail::json_int(j.at("torus_rank"), "cone.torus_rank");
    if (torus < 0)
        throw std::domain_error("cone.torus_rank: must be nonnegative");
    return Cone(static_cast<std::size_t>(rank), rays, static_cast<std::size_t>(torus));
}

inline Rat rat_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) {
        try {
            return Rat(j.get<std::string>());
        } catch (const std::exception& e) {
            throw std::domain_error(where + ": " + e.what());
        }
    }
    throw std::domain_error(where + ": expected an integer or a \"p/q\" string");
}

// Schema: {"components": [{"degree": [int,...], "skew_matrix": [["p/q",...],...]}]}.
// Matrix entries may be integers or rational strings. Shape consistency with
// the cone (square, skew, correct rank) is enforced later by the checks; only
// structural validity is required here.
inline PoissonStructure poisson_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("components"))
        throw std::domain_error("poisson: expected an object with a components array");
    const Json& jc = j.at("components");
    if (!jc.is_array())
        throw std::domain_error("poisson.components: expected an array");
    PoissonStructure p;
    for (const auto& comp : jc) {
        if (!comp.is_object() || !comp.contains("degree") || !comp.contains("skew_matrix"))
            throw std::domain_error(
                "poisson component: required fields are degree and skew_matrix");
        LVec degree = lvec_from_json(comp.at("degree"), "poisson component degree");
        const Json& jm = comp.at("skew_matrix");
        if (!jm.is_array() || jm.empty())
            throw std::domain_error("poisson skew_matrix: expected a nonempty array of rows");
        for (const auto& row : jm)
            if (!row.is_array() || row.size() != jm.at(0).size())
                throw std::domain_error("poisson skew_matrix: rows must be arrays of one length");
        Mat form(jm.size(), jm.at(0).size());
        for (std::size_t r = 0; r < form.rows(); ++r)
            for (std::size_t c = 0; c < form.cols(); ++c)
                form.at(r, c) = rat_from_json(jm.at(r).at(c), "poisson skew_matrix entry");
        p.components.push_back(PoissonComponent{std::move(degree), std::move(form)});
    }
    return p;
}

inline Json json_vec(const LVec& v) {
    Json a = Json::array();
    for (long long x : v) a.push_back(x);
    return a;
}

inline Json json_vecs(const std::vector<LVec>& vs) {
    Json a = Json::array();
    for (const auto& v : vs) a.push_back(json_vec(v));
    return a;
}

inline Json json_mat(const Mat& m) {
    Json a = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).to_string());
        a.push_back(std::move(row));
    }
    return a;
}

inline Json json_rats(const std::vector<Rat>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.to_string());
    return a;
}

// Dims table cell: {"1": d1, "2": d2, ...} with one key per wedge index.
inline Json json_dims(const HodgeDims& dims, std::size_t n) {
    Json out = Json::object();
    for (std::size_t i = 1; i <= n; ++i) out[std::to_string(i)] = dims.get(i);
    return out;
}

// Comma-separated integer list, e.g. "2,2" or "-1,0,3".
inline LVec parse_degrees(const std::string& text) {
    LVec out;
    std::size_t pos = 0;
    while (true) {
        std::size_t used = 0;
        long long value = 0;
        try {
            value = std::stoll(text.substr(pos), &used);
        } catch (const std::exception&) {
            throw std::domain_error("degree list '" + text + "': expected an integer at offset " +
                                    std::to_string(pos));
        }
        out.push_back(value);
        pos += used;
        if (pos == text.size()) return out;
        if (text[pos] != ',')
            throw std::domain_error("degree list '" + text + "': expected ',' at offset " +
                                    std::to_string(pos));
        ++pos;
    }
}

struct BoxAxis {
    long long lo = 0;
    long long hi = 0;
};

// Box syntax: one "lo:hi" range per axis, comma separated, e.g. "-4:4,-4:4".
// The empty string is the empty box.
inline std::vector<BoxAxis> parse_box(const std::string& text) {
    std::vector<BoxAxis> axes;
    if (text.empty()) return axes;
    std::size_t start = 0;
    while (true) {
        std::size_t end = text.find(',', start);
        std::string part = text.substr(start, end == std::string::npos ? end : end - start);
        std::size_t colon = part.find(':');
        if (colon == std::string::npos)
            throw std::domain_error("degree box '" + text + "': each axis needs a lo:hi range");
        std::size_t used_lo = 0, used_hi = 0;
        BoxAxis axis;
        try {
            axis.lo = std::stoll(part.substr(0, colon), &used_lo);
            axis.hi = std::stoll(part.substr(colon + 1), &used_hi);
        } catch (const std::exception&) {
            throw std::domain_error("degree box '" + text + "': bounds must be integers");
        }
        if (used_lo != colon || used_hi != part.size() - colon - 1)
            throw std::domain_error("degree box '" + text + "': bounds must be integers");
        axes.push_back(axis);
        if (end == std::string::npos) return axes;
        start = end + 1;
    }
}

// Lexicographic enumeration of the box, last axis fastest. An axis with
// lo > hi, like the zero-axis box, yields no points.
inline std::vector<LVec> box_points(const std::vector<BoxAxis>& axes) {
    std::vector<LVec> out;
    if (axes.empty()) return out;
    LVec cur;
    for (const auto& axis : axes) {
        if (axis.lo > axis.hi) return out;
        cur.push_back(axis.lo);
    }
    while (true) {
        out.push_back(cur);
        std::size_t k = axes.size();
        while (k > 0 && cur[k - 1] == axes[k - 1].hi) {
            cur[k - 1] = axes[k - 1].lo;
            --k;
        }
        if (k == 0) return out;
        ++cur[k - 1];
    }
}

inline Sense parse_sense(const std::string& text) {
    if (text == "minus") return Sense::minus;
    if (text == "plus") return Sense::plus;
    throw std::domain_error("sense: expected 'minus' or 'plus'");
}

}  // namespace toricdef
