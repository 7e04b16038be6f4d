#include "tsr/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tsr/bredon.hpp"
#include "tsr/errors.hpp"
#include "tsr/reduction.hpp"
#include "tsr/series.hpp"

#ifndef TSR_FIXTURES_DIR
#define TSR_FIXTURES_DIR "fixtures"
#endif

namespace tsr {

namespace {

using ojson = nlohmann::ordered_json;

const std::vector<std::string> kCensusExtras = {"chi_Xs", "E01", "E11", "E03", "E13", "H2Xsprime", "H1_orbit",
                                                "quotient_dims"};

struct Options {
    int prime = 0;
    std::string input;
    std::string census;
    int degrees = 10;
    bool json = false;
    std::string fixtures_dir;
    std::vector<std::string> merges;
    bool real = false;
    std::string group;
    std::string output;
    std::string log;
};

std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw ValidationError("cannot open " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& p, const std::string& text)
{
    std::ofstream out(p, std::ios::binary);
    if (!out)
        throw ValidationError("cannot write " + p.string());
    out << text;
}

std::filesystem::path resolve(const Options& o, const std::string& name)
{
    std::filesystem::path p(name);
    if (std::filesystem::exists(p))
        return p;
    std::filesystem::path dir = o.fixtures_dir.empty() ? default_fixtures_dir() : std::filesystem::path(o.fixtures_dir);
    if (p.is_relative() && std::filesystem::exists(dir / p))
        return dir / p;
    throw ValidationError("cannot find input '" + name + "' (fixtures directory " + dir.string() + ")");
}

OrbitComplex load_input(const Options& o)
{
    if (o.input.empty())
        throw ValidationError("--input is required");
    return load_complex(resolve(o, o.input));
}

std::string census_text(const Options& o)
{
    if (o.census.empty())
        throw ValidationError("--census is required (census values are not computed from number fields; see README)");
    auto first = o.census.find_first_not_of(" \t\n");
    if (first != std::string::npos && o.census[first] == '{')
        return o.census;
    return read_file(resolve(o, o.census));
}

struct CensusInput {
    SubgroupCensus census;
    nlohmann::json extras;
};

CensusInput load_census(const Options& o)
{
    std::string text = census_text(o);
    CensusInput c{parse_census(text, kCensusExtras), nlohmann::json::object()};
    auto doc = nlohmann::json::parse(text);
    for (const auto& k : kCensusExtras)
        if (doc.contains(k))
            c.extras[k] = doc[k];
    return c;
}

int extra_int(const CensusInput& c, const char* key, int fallback)
{
    if (!c.extras.contains(key))
        return fallback;
    const auto& v = c.extras[key];
    if (!v.is_number_integer())
        throw ValidationError(std::string("census field '") + key + "' must be an integer");
    return v.get<int>();
}

void require_prime(const Options& o, std::initializer_list<int> allowed = {})
{
    if (o.prime == 0)
        throw ValidationError("--prime is required");
    if (!is_prime(o.prime))
        throw ValidationError("--prime must be prime");
    if (allowed.size() && std::find(allowed.begin(), allowed.end(), o.prime) == allowed.end())
        throw ValidationError("--prime must be 2 or 3 here");
}

std::string join(const std::vector<std::string>& v, const std::string& sep)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? sep : "") + v[i];
    return out;
}

std::string component_label(const OrbitComplex& comp, int ell)
{
    try {
        return std::string(to_string(classify_component(comp, ell)));
    } catch (const ValidationError&) {
        return comp.dimension() == 0 ? "Vertex" : "Other";
    }
}

void describe_complex(std::ostream& out, const OrbitComplex& x, int ell)
{
    for (int d = 0; d <= std::max(x.dimension(), 0); ++d) {
        std::vector<std::string> items;
        for (const auto& c : x.cells) {
            if (c.dim != d)
                continue;
            std::string s = c.id + "(" + std::string(to_string(c.stabilizer)) + ")";
            if (d >= 1) {
                std::vector<std::string> faces;
                for (const Incidence* inc : x.faces_of(c.id))
                    for (int k = 0; k < inc->multiplicity; ++k)
                        faces.push_back(inc->face);
                s += ": " + join(faces, d == 1 ? " -- " : " ");
            }
            items.push_back(s);
        }
        const char* label = d == 0 ? "vertices" : d == 1 ? "edges" : "2-cells";
        if (d == 0 || !items.empty())
            out << label << ": " << (items.empty() ? "none" : join(items, d == 0 ? " " : "; ")) << "\n";
    }
    auto comps = connected_components(x);
    std::vector<std::string> types;
    for (const auto& c : comps)
        types.push_back(component_label(c, ell));
    out << "components: " << comps.size();
    if (!types.empty())
        out << " (" << join(types, ", ") << ")";
    out << "\n";
}

ojson move_json(const Move& m)
{
    return ojson::parse(ReductionLog{{m}}.to_jsonl());
}

std::string homology_line(const std::vector<AbelianGroup>& h)
{
    std::vector<std::string> parts;
    for (std::size_t n = 0; n < h.size(); ++n)
        parts.push_back("H_" + std::to_string(n) + " = " + to_string(h[n]));
    return parts.empty() ? "0" : join(parts, ", ");
}

ojson homology_json(const std::vector<AbelianGroup>& h)
{
    ojson a = ojson::array();
    for (const auto& g : h)
        a.push_back(to_string(g));
    return a;
}

std::string int_row(const std::vector<int>& v)
{
    std::vector<std::string> s;
    for (int x : v)
        s.push_back(std::to_string(x));
    return join(s, " ");
}

void print_table(std::ostream& out, const char* key, const std::vector<int>& index, const std::vector<int>& dims)
{
    out << key << ": " << int_row(index) << "\n";
    out << "dim: " << int_row(dims) << "\n";
}

std::string rational_string(const Rational& r)
{
    return r.denominator() == 1 ? std::to_string(r.numerator())
                                : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

ojson polynomial_json(const Polynomial& p)
{
    ojson a = ojson::array();
    for (const auto& c : p.coefficients())
        a.push_back(rational_string(c));
    return a;
}

// ---- commands ----

int cmd_validate(const Options& o, std::ostream& out)
{
    OrbitComplex x = load_input(o);
    if (o.json) {
        ojson j;
        j["valid"] = true;
        j["cells"] = x.cells.size();
        j["incidences"] = x.incidences.size();
        j["dimension"] = x.dimension();
        j["rigid"] = x.rigid;
        out << j.dump(2) << "\n";
    } else {
        out << "OK: " << x.cells.size() << " cells, " << x.incidences.size() << " incidences, dimension "
            << x.dimension() << (x.rigid ? ", rigid" : ", not rigid") << "\n";
    }
    return 0;
}

int cmd_extract(const Options& o, std::ostream& out)
{
    require_prime(o);
    OrbitComplex t = torsion_subcomplex(load_input(o), o.prime);
    if (!o.output.empty())
        write_file(o.output, serialize_complex(t));
    if (o.json) {
        out << serialize_complex(t);
    } else {
        out << o.prime << "-torsion subcomplex\n";
        describe_complex(out, t, o.prime);
    }
    return 0;
}

MergeCandidate parse_merge(const std::string& s)
{
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        parts.push_back(item);
    if (parts.size() != 3 || std::any_of(parts.begin(), parts.end(), [](const auto& p) { return p.empty(); }))
        throw ValidationError("--merge expects SIGMA,TAU1,TAU2, got '" + s + "'");
    return {parts[0], parts[1], parts[2]};
}

int cmd_reduce(const Options& o, std::ostream& out)
{
    require_prime(o);
    OrbitComplex x = load_input(o);
    ReductionResult r = reduce(x, o.prime);
    for (const auto& m : o.merges)
        apply_scripted_merge(r, parse_merge(m));
    ReductionLog round = ReductionLog::from_jsonl(r.log.to_jsonl());
    if (!(round == r.log) || !(replay(x, o.prime, round) == r.complex))
        throw InvariantError("reduction log does not replay to the reduced complex");
    if (!o.output.empty())
        write_file(o.output, serialize_complex(r.complex));
    if (!o.log.empty())
        write_file(o.log, r.log.to_jsonl());

    auto comps = connected_components(r.complex);
    if (o.json) {
        ojson j;
        j["prime"] = o.prime;
        j["complex"] = ojson::parse(serialize_complex(r.complex));
        j["log"] = ojson::array();
        for (const auto& m : r.log.moves)
            j["log"].push_back(move_json(m));
        j["components"] = ojson::array();
        for (const auto& c : comps)
            j["components"].push_back(component_label(c, o.prime));
        j["log_verified"] = true;
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "reduced " << o.prime << "-torsion subcomplex\n";
    describe_complex(out, r.complex, o.prime);
    out << "moves: " << r.log.moves.size() << "\n";
    for (const auto& m : r.log.moves) {
        if (m.kind == MoveKind::Cut)
            out << "  cut " << m.cells[0] << " with " << m.cells[1] << " [" << m.condition << "]\n";
        else
            out << "  merge " << m.cells[1] << ", " << m.cells[2] << " across " << m.cells[0] << " -> " << m.result
                << " [" << m.condition << "]\n";
    }
    out << "log verified\n";
    return 0;
}

int cmd_poincare(const Options& o, std::ostream& out)
{
    require_prime(o, {2, 3});
    if (o.degrees < 3)
        throw ValidationError("--degrees must be at least 3");
    CensusInput c = load_census(o);
    RationalSeries s = o.prime == 2 ? poincare_2torsion(c.census) : poincare_3torsion(c.census);
    auto coeffs = s.expand(o.degrees);
    std::vector<int> qs, dims;
    for (int q = 3; q <= o.degrees; ++q) {
        qs.push_back(q);
        dims.push_back(static_cast<int>(coeffs[q].numerator()));
    }
    if (o.json) {
        ojson j;
        j["prime"] = o.prime;
        j["census"] = ojson::parse(census_to_json(c.census));
        j["series"] = s.to_string();
        j["numerator"] = polynomial_json(s.numerator());
        j["denominator"] = polynomial_json(s.denominator());
        j["q"] = qs;
        j["dim"] = dims;
        out << j.dump(2) << "\n";
    } else {
        out << "P^" << o.prime << "(t) = " << s.to_string() << "\n";
        print_table(out, "q", qs, dims);
    }
    return 0;
}

int cmd_bredon(const Options& o, std::ostream& out)
{
    OrbitComplex x = load_input(o);
    BredonComplex b = bredon_complex(x);
    BlockSplit s = split_blocks(b);
    auto total = homology(b.chains);
    auto h1 = homology(s.trivial_block), h2 = homology(s.block2), h3 = homology(s.block3);
    std::optional<BredonFormula> f;
    if (!o.census.empty())
        f = bredon_homology_formula(load_census(o).census);
    if (o.json) {
        ojson j;
        j["orbit_block"] = homology_json(h1);
        j["block2"] = homology_json(h2);
        j["block3"] = homology_json(h3);
        j["total"] = homology_json(total);
        if (f) {
            j["formula"] = {{"block2", {to_string(f->H0_2block), to_string(f->H1_2block)}},
                            {"block3", {to_string(f->H0_3block), to_string(f->H1_3block)}}};
        }
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "orbit block: " << homology_line(h1) << "\n";
    out << "2-torsion block: " << homology_line(h2) << "\n";
    out << "3-torsion block: " << homology_line(h3) << "\n";
    out << "total: " << homology_line(total) << "\n";
    if (f) {
        out << "formula 2-torsion block: " << homology_line({f->H0_2block, f->H1_2block}) << "\n";
        out << "formula 3-torsion block: " << homology_line({f->H0_3block, f->H1_3block}) << "\n";
    }
    return 0;
}

int cmd_khomology(const Options& o, std::ostream& out)
{
    CensusInput c = load_census(o);
    AbelianGroup h1;
    if (c.extras.contains("H1_orbit")) {
        if (!c.extras["H1_orbit"].is_string())
            throw ValidationError("census field 'H1_orbit' must be a string such as \"Z^2 ⊕ Z/2\"");
        h1 = parse_abelian_group(c.extras["H1_orbit"].get<std::string>());
    }
    KHomology k = k_homology(c.census, h1, c.census.beta2);
    if (o.json) {
        ojson j;
        j["K0"] = to_string(k.K0);
        j["K1"] = to_string(k.K1);
        out << j.dump(2) << "\n";
    } else {
        out << "K_0 = " << to_string(k.K0) << ", K_1 = " << to_string(k.K1) << "\n";
    }
    return 0;
}

int cmd_chenruan(const Options& o, std::ostream& out)
{
    CensusInput c = load_census(o);
    std::map<int, int> q;
    if (c.extras.contains("quotient_dims")) {
        const auto& qd = c.extras["quotient_dims"];
        if (!qd.is_object())
            throw ValidationError("census field 'quotient_dims' must map degrees to dimensions");
        for (const auto& [k, v] : qd.items()) {
            int d = 0;
            try {
                std::size_t used = 0;
                d = std::stoi(k, &used);
                if (used != k.size())
                    throw std::invalid_argument(k);
            } catch (const std::exception&) {
                throw ValidationError("quotient_dims key '" + k + "' is not a degree");
            }
            if (!v.is_number_integer())
                throw ValidationError("quotient_dims[" + k + "] must be an integer");
            q[d] = v.get<int>();
        }
    }
    auto dims = chen_ruan_dims(c.census, q, !o.real);
    std::vector<int> ds, vs;
    for (const auto& [d, v] : dims) {
        ds.push_back(d);
        vs.push_back(v);
    }
    if (o.json) {
        ojson j;
        j["complexified"] = !o.real;
        j["d"] = ds;
        j["dim"] = vs;
        out << j.dump(2) << "\n";
    } else {
        out << (o.real ? "real" : "complexified") << " orbifold cohomology\n";
        print_table(out, "d", ds, vs);
    }
    return 0;
}

int cmd_e2page(const Options& o, std::ostream& out)
{
    CensusInput c = load_census(o);
    XsRows xs{extra_int(c, "E01", 0), extra_int(c, "E11", 0), extra_int(c, "E03", 0), extra_int(c, "E13", 0),
              extra_int(c, "H2Xsprime", 0)};
    E2Page p = e2_page(c.census, extra_int(c, "chi_Xs", 0), xs);
    if (o.json) {
        ojson j;
        j["a1"] = p.a1;
        j["a2"] = p.a2;
        j["a3"] = p.a3;
        j["rows"] = ojson::object();
        for (int r = 3; r >= 0; --r)
            j["rows"]["q=" + std::to_string(r) + " mod 4"] = p.rows[r];
        out << j.dump(2) << "\n";
    } else {
        out << "a1 = " << p.a1 << ", a2 = " << p.a2 << ", a3 = " << p.a3 << "\n";
        out << "q mod 4 | n=0 n=1 n=2\n";
        for (int r = 3; r >= 0; --r) {
            std::vector<int> row(p.rows[r].begin(), p.rows[r].end());
            out << "      " << r << " | " << int_row(row) << "\n";
        }
    }
    return 0;
}

int cmd_oracle(const Options& o, std::ostream& out)
{
    require_prime(o);
    if (o.degrees < 0)
        throw ValidationError("--degrees must be non-negative");
    std::vector<int> qs, dims;
    std::string what;
    if (!o.group.empty()) {
        if (!o.input.empty())
            throw ValidationError("--group and --input are exclusive");
        GroupTag g = parse_group_tag(o.group);
        dims = mod_ell_homology_bruteforce(catalog_group(g), o.prime, o.degrees).dims;
        what = "H_q(" + o.group + "; F_" + std::to_string(o.prime) + ") from the bar complex";
    } else {
        OrbitComplex x = load_input(o);
        dims = equivariant_graph_cohomology_oracle(x, o.prime, 0, o.degrees);
        what = "equivariant cohomology of the graph, F_" + std::to_string(o.prime);
    }
    for (int q = 0; q <= o.degrees; ++q)
        qs.push_back(q);
    if (o.json) {
        ojson j;
        j["prime"] = o.prime;
        j["q"] = qs;
        j["dim"] = dims;
        out << j.dump(2) << "\n";
    } else {
        out << what << "\n";
        print_table(out, "q", qs, dims);
    }
    return 0;
}

}  // namespace

std::filesystem::path default_fixtures_dir()
{
    if (const char* env = std::getenv("TSR_FIXTURES"); env && *env)
        return env;
    return TSR_FIXTURES_DIR;
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Torsion subcomplex reduction and its closed-form consequences", "tsr"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&o](CLI::App* sub) {
        sub->add_option("--fixtures-dir", o.fixtures_dir, "Directory searched for relative inputs");
        sub->add_flag("--json", o.json, "Machine-readable output");
    };
    auto add_prime = [&o](CLI::App* sub) { sub->add_option("--prime", o.prime, "Prime ell"); };
    auto add_input = [&o](CLI::App* sub) { sub->add_option("--input", o.input, "Orbit complex JSON"); };
    auto add_census = [&o](CLI::App* sub) {
        sub->add_option("--census", o.census, "Census JSON file or inline object");
    };

    std::map<std::string, std::function<int(const Options&, std::ostream&)>> handlers = {
        {"validate", cmd_validate}, {"extract", cmd_extract},     {"reduce", cmd_reduce},
        {"poincare", cmd_poincare}, {"bredon", cmd_bredon},       {"khomology", cmd_khomology},
        {"chenruan", cmd_chenruan}, {"e2page", cmd_e2page},       {"oracle", cmd_oracle},
    };

    auto* validate = app.add_subcommand("validate", "Check an orbit complex file");
    add_input(validate);
    auto* extract = app.add_subcommand("extract", "ell-torsion subcomplex");
    add_input(extract);
    add_prime(extract);
    extract->add_option("--output", o.output, "Write the subcomplex here");
    auto* reduce_cmd = app.add_subcommand("reduce", "Reduce the ell-torsion subcomplex");
    add_input(reduce_cmd);
    add_prime(reduce_cmd);
    reduce_cmd->add_option("--merge", o.merges, "Scripted merge SIGMA,TAU1,TAU2 after the fixpoint")
        ->allow_extra_args(false);
    reduce_cmd->add_option("--output", o.output, "Write the reduced complex here");
    reduce_cmd->add_option("--log", o.log, "Write the reduction log (JSON lines) here");
    auto* poincare = app.add_subcommand("poincare", "Poincare series of the ell-torsion part");
    add_prime(poincare);
    add_census(poincare);
    poincare->add_option("--degrees", o.degrees, "Expand up to this degree");
    auto* bredon = app.add_subcommand("bredon", "Bredon homology with R_C coefficients");
    add_input(bredon);
    add_census(bredon);
    auto* kh = app.add_subcommand("khomology", "Equivariant K-homology from a census");
    add_census(kh);
    auto* cr = app.add_subcommand("chenruan", "Chen-Ruan orbifold cohomology dimensions");
    add_census(cr);
    cr->add_flag("--real", o.real, "Real instead of complexified orbifold");
    auto* e2 = app.add_subcommand("e2page", "E2 page of the equivariant spectral sequence");
    add_census(e2);
    auto* oracle = app.add_subcommand("oracle", "Brute-force dimension oracles");
    add_input(oracle);
    add_prime(oracle);
    oracle->add_option("--group", o.group, "Catalog group for the bar-complex oracle");
    oracle->add_option("--degrees", o.degrees, "Largest degree");
    for (auto* sub : app.get_subcommands([](CLI::App*) { return true; }))
        add_common(sub);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        for (auto* sub : app.get_subcommands())
            return handlers.at(sub->get_name())(o, out);
        return 1;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const InvariantError& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace tsr
