// SPDX-License-Identifier: Apache-2.0
#include "numgrid/atlas_io.hpp"

#include <json.hpp>

#include "numgrid/certify.hpp"

namespace numgrid {

using nlohmann::json;

namespace {

json naturals_to_json(const std::vector<Natural>& values) {
    json out = json::array();
    for (const Natural& v : values) {
        out.push_back(v.to_string());
    }
    return out;
}

std::vector<Natural> naturals_from_json(const json& j, const char* field) {
    if (!j.is_array()) {
        throw AtlasCacheError(std::string(field) + " must be an array");
    }
    std::vector<Natural> out;
    for (const json& item : j) {
        if (!item.is_string()) {
            throw AtlasCacheError(std::string(field) + " must hold decimal strings");
        }
        out.push_back(Natural::parse(item.get<std::string>()));
    }
    return out;
}

}  // namespace

std::string serialize_atlas(const AttractorAtlas& atlas) {
    const DescentCertificate& cert = atlas.certificate();
    json cycles = json::array();
    for (const Cycle& c : atlas.cycles()) {
        cycles.push_back(naturals_to_json(c.members()));
    }
    json record = {
        {"base", cert.system.base()},
        {"brute_bound", cert.brute_bound.to_string()},
        {"created_by", std::string(kToolVersion)},
        {"cycles", std::move(cycles)},
        {"exponent", cert.system.exponent()},
        {"fixed_points", naturals_to_json(atlas.fixed_points())},
        {"max_transient", cert.max_transient},
        {"p0", cert.p0},
    };
    return record.dump(2) + "\n";
}

AttractorAtlas deserialize_atlas(std::string_view text, const DigitSystem& sys) {
    try {
        const json record = json::parse(text);
        if (!record.is_object()) {
            throw AtlasCacheError("atlas record must be an object");
        }
        if (record.at("base").get<std::uint32_t>() != sys.base() ||
            record.at("exponent").get<std::uint32_t>() != sys.exponent()) {
            throw AtlasCacheError("atlas record is for a different system");
        }
        const std::uint32_t p0 = record.at("p0").get<std::uint32_t>();
        if (p0 != digit_reduction_threshold(sys)) {
            throw AtlasCacheError("p0 does not match the recomputed threshold");
        }
        const Natural bound = Natural::parse(record.at("brute_bound").get<std::string>());
        if (bound != brute_bound(sys, p0)) {
            throw AtlasCacheError("brute_bound does not match the recomputed bound");
        }
        const std::uint64_t max_transient = record.at("max_transient").get<std::uint64_t>();

        std::vector<Cycle> attractors;
        const std::vector<Natural> fixed = naturals_from_json(record.at("fixed_points"), "fixed_points");
        if (!std::is_sorted(fixed.begin(), fixed.end())) {
            throw AtlasCacheError("fixed_points are not sorted");
        }
        for (const Natural& x : fixed) {
            if (x > bound) {
                throw AtlasCacheError("fixed point " + x.to_string() + " lies outside [0, brute_bound]");
            }
            attractors.push_back(canonicalize_cycle({x}, sys));
        }
        const json& cycles = record.at("cycles");
        if (!cycles.is_array()) {
            throw AtlasCacheError("cycles must be an array");
        }
        std::vector<Cycle> loops;
        for (const json& c : cycles) {
            const std::vector<Natural> members = naturals_from_json(c, "cycles");
            if (members.size() < 2) {
                throw AtlasCacheError("cycles must have length >= 2");
            }
            for (const Natural& m : members) {
                if (m > bound) {
                    throw AtlasCacheError("cycle member " + m.to_string() + " lies outside [0, brute_bound]");
                }
            }
            Cycle cycle = canonicalize_cycle(members, sys);
            if (cycle.members() != members) {
                throw AtlasCacheError("cycle is not in canonical rotation");
            }
            loops.push_back(std::move(cycle));
        }
        if (!std::is_sorted(loops.begin(), loops.end())) {
            throw AtlasCacheError("cycles are not sorted by minimum member");
        }
        attractors.insert(attractors.end(), loops.begin(), loops.end());
        return AttractorAtlas(DescentCertificate{sys, p0, bound, max_transient}, std::move(attractors));
    } catch (const AtlasCacheError&) {
        throw;
    } catch (const std::exception& e) {
        throw AtlasCacheError(std::string("malformed atlas record: ") + e.what());
    }
}

std::string atlas_cache_file_name(const DigitSystem& sys) {
    return "atlas-b" + std::to_string(sys.base()) + "-e" + std::to_string(sys.exponent()) + ".json";
}

}  // namespace numgrid
