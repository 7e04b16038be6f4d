#include "tsr/complexes.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tsr/errors.hpp"

namespace tsr {

using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what)
{
    throw ValidationError("schema error at " + where + ": " + what);
}

void check_keys(const ojson& obj, const std::string& where, std::initializer_list<std::string_view> allowed)
{
    if (!obj.is_object())
        schema_error(where, "expected an object");
    for (const auto& [key, _] : obj.items())
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            schema_error(where, "unknown field '" + key + "'");
}

const ojson& required(const ojson& obj, const std::string& where, const char* key)
{
    auto it = obj.find(key);
    if (it == obj.end())
        schema_error(where, std::string("missing field '") + key + "'");
    return *it;
}

int as_int(const ojson& v, const std::string& where)
{
    if (!v.is_number_integer())
        schema_error(where, "expected an integer");
    return v.get<int>();
}

std::string as_string(const ojson& v, const std::string& where)
{
    if (!v.is_string())
        schema_error(where, "expected a string");
    return v.get<std::string>();
}

bool as_bool(const ojson& v, const std::string& where)
{
    if (!v.is_boolean())
        schema_error(where, "expected a boolean");
    return v.get<bool>();
}

struct Graph {
    std::vector<std::string> vertices;
    std::map<std::string, int> degree;
    int edges = 0;
};

}  // namespace

const OrbitCell* OrbitComplex::find(std::string_view id) const
{
    for (const auto& c : cells)
        if (c.id == id)
            return &c;
    return nullptr;
}

const OrbitCell& OrbitComplex::cell(std::string_view id) const
{
    if (const OrbitCell* c = find(id))
        return *c;
    throw ValidationError("no cell with id '" + std::string(id) + "'");
}

int OrbitComplex::dimension() const
{
    int d = -1;
    for (const auto& c : cells)
        d = std::max(d, c.dim);
    return d;
}

std::vector<const Incidence*> OrbitComplex::cofaces_of(std::string_view id) const
{
    std::vector<const Incidence*> out;
    for (const auto& inc : incidences)
        if (inc.face == id)
            out.push_back(&inc);
    return out;
}

std::vector<const Incidence*> OrbitComplex::faces_of(std::string_view id) const
{
    std::vector<const Incidence*> out;
    for (const auto& inc : incidences)
        if (inc.coface == id)
            out.push_back(&inc);
    return out;
}

std::string_view to_string(ComponentType t)
{
    switch (t) {
    case ComponentType::Circle: return "Circle";
    case ComponentType::Edge: return "Edge";
    case ComponentType::GraphFive: return "GraphFive";
    case ComponentType::GraphTwo: return "GraphTwo";
    case ComponentType::Other: return "Other";
    }
    return "?";
}

void validate_complex(const OrbitComplex& x)
{
    std::set<std::string> ids;
    for (const auto& c : x.cells) {
        if (c.id.empty())
            throw ValidationError("cell with empty id");
        if (!ids.insert(c.id).second)
            throw ValidationError("duplicate cell id '" + c.id + "'");
        if (c.dim < 0)
            throw ValidationError("cell '" + c.id + "' has negative dimension");
    }
    for (const auto& inc : x.incidences) {
        const OrbitCell* f = x.find(inc.face);
        const OrbitCell* cf = x.find(inc.coface);
        if (!f || !cf)
            throw ValidationError("incidence " + inc.face + " -> " + inc.coface + " names a missing cell");
        if (cf->dim != f->dim + 1)
            throw ValidationError("incidence " + inc.face + " -> " + inc.coface + " does not raise dimension by one");
        if (inc.multiplicity < 1)
            throw ValidationError("incidence " + inc.face + " -> " + inc.coface + " has multiplicity < 1");
        if (inc.embedding < 0)
            throw ValidationError("incidence " + inc.face + " -> " + inc.coface + " has negative embedding");
        if (inc.sign < -1 || inc.sign > 1)
            throw ValidationError("incidence " + inc.face + " -> " + inc.coface + " has sign outside {-1, 0, 1}");
    }
}

OrbitComplex parse_complex(std::string_view text)
{
    ojson doc;
    try {
        doc = ojson::parse(text.begin(), text.end());
    } catch (const ojson::parse_error& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
    check_keys(doc, "document", {"rigid", "cells", "incidences"});
    OrbitComplex x;
    if (doc.contains("rigid"))
        x.rigid = as_bool(doc["rigid"], "rigid");
    if (doc.contains("cells")) {
        const auto& cells = doc["cells"];
        if (!cells.is_array())
            schema_error("cells", "expected an array");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            std::string where = "cells[" + std::to_string(i) + "]";
            const auto& c = cells[i];
            check_keys(c, where, {"id", "dim", "stabilizer", "self_identified"});
            OrbitCell cell;
            cell.id = as_string(required(c, where, "id"), where + ".id");
            cell.dim = as_int(required(c, where, "dim"), where + ".dim");
            std::string stab = as_string(required(c, where, "stabilizer"), where + ".stabilizer");
            try {
                cell.stabilizer = parse_group_tag(stab);
            } catch (const ValidationError&) {
                schema_error(where + ".stabilizer", "unknown stabilizer '" + stab + "'");
            }
            if (c.contains("self_identified"))
                cell.self_identified = as_bool(c["self_identified"], where + ".self_identified");
            x.cells.push_back(std::move(cell));
        }
    }
    if (doc.contains("incidences")) {
        const auto& incs = doc["incidences"];
        if (!incs.is_array())
            schema_error("incidences", "expected an array");
        for (std::size_t i = 0; i < incs.size(); ++i) {
            std::string where = "incidences[" + std::to_string(i) + "]";
            const auto& r = incs[i];
            check_keys(r, where, {"face", "coface", "multiplicity", "embedding", "sign"});
            Incidence inc;
            inc.face = as_string(required(r, where, "face"), where + ".face");
            inc.coface = as_string(required(r, where, "coface"), where + ".coface");
            if (r.contains("multiplicity"))
                inc.multiplicity = as_int(r["multiplicity"], where + ".multiplicity");
            if (r.contains("embedding"))
                inc.embedding = as_int(r["embedding"], where + ".embedding");
            if (r.contains("sign"))
                inc.sign = as_int(r["sign"], where + ".sign");
            x.incidences.push_back(std::move(inc));
        }
    }
    validate_complex(x);
    return x;
}

std::string serialize_complex(const OrbitComplex& x)
{
    ojson doc;
    doc["rigid"] = x.rigid;
    doc["cells"] = ojson::array();
    for (const auto& c : x.cells) {
        ojson j;
        j["id"] = c.id;
        j["dim"] = c.dim;
        j["stabilizer"] = std::string(to_string(c.stabilizer));
        j["self_identified"] = c.self_identified;
        doc["cells"].push_back(std::move(j));
    }
    doc["incidences"] = ojson::array();
    for (const auto& inc : x.incidences) {
        ojson j;
        j["face"] = inc.face;
        j["coface"] = inc.coface;
        j["multiplicity"] = inc.multiplicity;
        if (inc.embedding != 0)
            j["embedding"] = inc.embedding;
        if (inc.sign != 0)
            j["sign"] = inc.sign;
        doc["incidences"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

OrbitComplex load_complex(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_complex(ss.str());
    } catch (const ValidationError& e) {
        throw ValidationError(path.filename().string() + ": " + e.what());
    }
}

OrbitComplex torsion_subcomplex(const OrbitComplex& x, int ell)
{
    if (!is_prime(ell))
        throw ValidationError("ell must be prime");
    if (!x.rigid)
        throw ValidationError("complex is not rigid");
    OrbitComplex out;
    out.rigid = true;
    std::set<std::string> kept;
    for (const auto& c : x.cells)
        if (tag_order(c.stabilizer) % ell == 0) {
            out.cells.push_back(c);
            kept.insert(c.id);
        }
    for (const auto& inc : x.incidences)
        if (kept.count(inc.face) && kept.count(inc.coface))
            out.incidences.push_back(inc);
    return out;
}

std::vector<OrbitComplex> connected_components(const OrbitComplex& x)
{
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < x.cells.size(); ++i)
        index[x.cells[i].id] = i;
    std::vector<std::size_t> parent(x.cells.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](std::size_t i) {
        while (parent[i] != i)
            i = parent[i] = parent[parent[i]];
        return i;
    };
    for (const auto& inc : x.incidences) {
        std::size_t a = root(index.at(inc.face)), b = root(index.at(inc.coface));
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
    std::map<std::size_t, std::size_t> slot;
    std::vector<OrbitComplex> out;
    for (std::size_t i = 0; i < x.cells.size(); ++i) {
        std::size_t r = root(i);
        auto [it, fresh] = slot.emplace(r, out.size());
        if (fresh) {
            out.emplace_back();
            out.back().rigid = x.rigid;
        }
        out[it->second].cells.push_back(x.cells[i]);
    }
    for (const auto& inc : x.incidences)
        out[slot.at(root(index.at(inc.face)))].incidences.push_back(inc);
    return out;
}

ComponentType classify_component(const OrbitComplex& x, int ell)
{
    if (!is_prime(ell))
        throw ValidationError("ell must be prime");
    if (x.dimension() != 1)
        throw ValidationError("component is not 1-dimensional");
    if (connected_components(x).size() != 1)
        throw ValidationError("complex is not connected");
    for (const auto& c : x.cells)
        if (tag_order(c.stabilizer) % ell != 0)
            throw ValidationError("cell '" + c.id + "' is not in the " + std::to_string(ell) + "-torsion subcomplex");

    Graph g;
    for (const auto& c : x.cells) {
        if (c.dim == 0) {
            g.vertices.push_back(c.id);
            g.degree[c.id] = 0;
        } else {
            ++g.edges;
            int ends = 0;
            for (const Incidence* inc : x.faces_of(c.id))
                ends += inc->multiplicity;
            if (ends != 2)
                return ComponentType::Other;
        }
    }
    for (const auto& inc : x.incidences)
        g.degree[inc.face] += inc.multiplicity;

    int nv = static_cast<int>(g.vertices.size());
    auto stab = [&](const std::string& id) { return x.cell(id).stabilizer; };
    bool all_two = std::all_of(g.vertices.begin(), g.vertices.end(), [&](const auto& v) { return g.degree[v] == 2; });
    if (all_two && g.edges == nv)
        return ComponentType::Circle;

    if (g.edges == nv - 1) {
        std::vector<std::string> ends;
        bool path = true;
        for (const auto& v : g.vertices) {
            if (g.degree[v] == 1)
                ends.push_back(v);
            else if (g.degree[v] != 2)
                path = false;
        }
        if (path && ends.size() == 2) {
            std::multiset<GroupTag> tags{stab(ends[0]), stab(ends[1])};
            if (tags == std::multiset<GroupTag>{GroupTag::D2, GroupTag::A4})
                return ComponentType::GraphTwo;
            return ComponentType::Edge;
        }
        return ComponentType::Other;
    }

    if (nv == 2 && g.edges == 3) {
        const auto& a = g.vertices[0];
        const auto& b = g.vertices[1];
        if (stab(a) == GroupTag::D2 && stab(b) == GroupTag::D2 && g.degree[a] == 3 && g.degree[b] == 3)
            return ComponentType::GraphFive;
    }
    if (nv == 2 && g.edges == 2) {
        for (int i = 0; i < 2; ++i) {
            const auto& d = g.vertices[i];
            const auto& t = g.vertices[1 - i];
            if (stab(d) == GroupTag::D2 && g.degree[d] == 3 && stab(t) == GroupTag::A4 && g.degree[t] == 1)
                return ComponentType::GraphTwo;
        }
    }
    return ComponentType::Other;
}

}  // namespace tsr
