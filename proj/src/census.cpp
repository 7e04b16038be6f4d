#include <algorithm>
#include <map>

#include <json.hpp>

#include "tsr/errors.hpp"
#include "tsr/series.hpp"

namespace tsr {

namespace {

struct Field {
    const char* key;
    int SubgroupCensus::*member;
    std::vector<std::string> aliases;
};

const std::vector<Field>& fields()
{
    static const std::vector<Field> f = {
        {"lambda4", &SubgroupCensus::lambda4, {"λ4", "λ₄"}},
        {"lambda4star", &SubgroupCensus::lambda4star, {"lambda4*", "λ4*", "λ₄*"}},
        {"lambda6", &SubgroupCensus::lambda6, {"λ6", "λ₆"}},
        {"lambda6star", &SubgroupCensus::lambda6star, {"lambda6*", "λ6*", "λ₆*"}},
        {"mu2", &SubgroupCensus::mu2, {"μ2", "μ₂"}},
        {"mu3", &SubgroupCensus::mu3, {"μ3", "μ₃"}},
        {"muT", &SubgroupCensus::muT, {"mu_T", "μT", "μ_T"}},
        {"z2", &SubgroupCensus::z2, {"z₂"}},
        {"d2", &SubgroupCensus::d2, {"d₂"}},
        {"v", &SubgroupCensus::v, {}},
        {"c", &SubgroupCensus::c, {}},
        {"beta1", &SubgroupCensus::beta1, {"β1", "β¹", "β₁"}},
        {"beta2", &SubgroupCensus::beta2, {"β2", "β²", "β₂"}},
    };
    return f;
}

}  // namespace

void SubgroupCensus::validate() const
{
    for (const auto& f : fields())
        if (this->*f.member < 0)
            throw ValidationError(std::string("census field ") + f.key + " is negative");
    if (lambda4star > lambda4)
        throw ValidationError("census: lambda4star exceeds lambda4");
    if (lambda6star > lambda6)
        throw ValidationError("census: lambda6star exceeds lambda6");
    if (mu3 % 2 != 0)
        throw ValidationError("census: mu3 must be even");
    if (d2 % 2 != 0)
        throw ValidationError("census: d2 must be even");
}

SubgroupCensus parse_census(std::string_view json, const std::vector<std::string>& extra)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json.begin(), json.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("census is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ValidationError("census must be a JSON object");
    SubgroupCensus c;
    std::map<std::string, std::string> seen;
    for (const auto& [key, value] : doc.items()) {
        const Field* match = nullptr;
        for (const auto& f : fields())
            if (key == f.key || std::find(f.aliases.begin(), f.aliases.end(), key) != f.aliases.end())
                match = &f;
        if (!match) {
            if (std::find(extra.begin(), extra.end(), key) != extra.end())
                continue;
            throw ValidationError("unknown census field '" + key + "'");
        }
        if (auto [it, fresh] = seen.emplace(match->key, key); !fresh)
            throw ValidationError("census field " + std::string(match->key) + " given twice ('" + it->second +
                                  "' and '" + key + "')");
        if (!value.is_number_integer())
            throw ValidationError("census field '" + key + "' must be an integer");
        c.*match->member = value.get<int>();
    }
    c.validate();
    return c;
}

std::string census_to_json(const SubgroupCensus& c)
{
    nlohmann::ordered_json j;
    for (const auto& f : fields())
        j[f.key] = c.*f.member;
    return j.dump();
}

SubgroupCensus census_from_components(const ComponentCounts& k)
{
    if (k.o2 < 0 || k.iota2 < 0 || k.theta < 0 || k.rho < 0 || k.o3 < 0 || k.iota3 < 0)
        throw ValidationError("component counts must be non-negative");
    SubgroupCensus c;
    c.lambda4star = k.iota2 + 3 * k.theta + 2 * k.rho;
    c.lambda4 = k.o2 + c.lambda4star;
    c.mu2 = 2 * (k.iota2 + k.theta + k.rho);
    c.muT = 2 * k.iota2 + k.rho;
    c.lambda6star = k.iota3;
    c.lambda6 = k.o3 + k.iota3;
    c.mu3 = 2 * k.iota3;
    c.z2 = c.lambda4;
    c.d2 = c.mu2;
    return c;
}

}  // namespace tsr
