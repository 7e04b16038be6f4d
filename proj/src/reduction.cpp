#include "tsr/reduction.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "tsr/errors.hpp"

namespace tsr {

namespace {

std::vector<FiniteGroup> coprime_quotients(const FiniteGroup& g, int ell)
{
    std::vector<FiniteGroup> out;
    for (const auto& t : normal_subgroups(g))
        if (std::gcd(t.order(), ell) == 1)
            out.push_back(quotient(g, t));
    return out;
}

FiniteGroup sylow_center_normalizer(const FiniteGroup& g, int ell)
{
    return normalizer(g, center(sylow_subgroup(g, ell)));
}

std::optional<BPrimeClause> compute_b_prime(GroupTag sigma, GroupTag tau, int ell)
{
    auto qs = coprime_quotients(catalog_group(sigma), ell);
    auto qt = coprime_quotients(catalog_group(tau), ell);
    for (const auto& a : qs)
        for (const auto& b : qt)
            if (are_isomorphic(a, b))
                return BPrimeClause::One;
    for (const auto& a : qs) {
        if (!is_ell_normal(a, ell))
            continue;
        FiniteGroup n = sylow_center_normalizer(a, ell);
        for (const auto& b : qt)
            if (are_isomorphic(b, n))
                return BPrimeClause::Two;
    }
    for (const auto& a : qs) {
        if (!is_ell_normal(a, ell))
            continue;
        FiniteGroup na = sylow_center_normalizer(a, ell);
        for (const auto& b : qt) {
            if (!is_ell_normal(b, ell))
                continue;
            FiniteGroup nb = sylow_center_normalizer(b, ell);
            for (const auto& t : normal_subgroups(na))
                if (std::gcd(t.order(), ell) == 1 && are_isomorphic(quotient(na, t), nb))
                    return BPrimeClause::Three;
        }
    }
    return std::nullopt;
}

int coface_dim(const OrbitComplex& x, const std::string& sigma) { return x.cell(sigma).dim + 1; }

std::vector<Incidence> filtered(const OrbitComplex& x, const std::vector<std::string>& drop)
{
    std::vector<Incidence> out;
    for (const auto& inc : x.incidences)
        if (std::find(drop.begin(), drop.end(), inc.face) == drop.end() &&
            std::find(drop.begin(), drop.end(), inc.coface) == drop.end())
            out.push_back(inc);
    return out;
}

OrbitComplex do_merge(const OrbitComplex& x, const MergeCandidate& c)
{
    std::string id = merged_id(x, c.tau1);
    OrbitComplex out;
    out.rigid = x.rigid;
    for (const auto& cell : x.cells) {
        if (cell.id == c.sigma || cell.id == c.tau2)
            continue;
        out.cells.push_back(cell);
        if (cell.id == c.tau1)
            out.cells.back().id = id;
    }
    for (const auto& inc : x.incidences) {
        if (inc.face == c.sigma || inc.coface == c.sigma)
            continue;
        Incidence r = inc;
        if (r.coface == c.tau1 || r.coface == c.tau2)
            r.coface = id;
        else if (r.face == c.tau1 || r.face == c.tau2)
            throw InvariantError("merged cell has cofaces");
        auto same = std::find_if(out.incidences.begin(), out.incidences.end(), [&](const Incidence& o) {
            return o.face == r.face && o.coface == r.coface && o.embedding == r.embedding && o.sign == r.sign;
        });
        if (same != out.incidences.end() && r.coface == id)
            same->multiplicity += r.multiplicity;
        else
            out.incidences.push_back(std::move(r));
    }
    return out;
}

void check_move_dims(const OrbitComplex& x, const std::string& sigma, const std::string& tau)
{
    if (x.cell(tau).dim != coface_dim(x, sigma))
        throw ValidationError("cell '" + tau + "' is not one dimension above '" + sigma + "'");
}

}  // namespace

std::string to_string(BPrimeClause c) { return "B'(" + std::to_string(static_cast<int>(c)) + ")"; }

std::optional<BPrimeClause> check_condition_B_prime(GroupTag sigma, GroupTag tau, int ell)
{
    if (!is_prime(ell))
        throw ValidationError("ell must be prime");
    static std::mutex mutex;
    static std::map<std::tuple<GroupTag, GroupTag, int>, std::optional<BPrimeClause>> cache;
    auto key = std::make_tuple(sigma, tau, ell);
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end())
            return it->second;
    }
    auto result = compute_b_prime(sigma, tau, ell);
    std::lock_guard lock(mutex);
    cache.emplace(key, result);
    return result;
}

bool condition_A_shape(const OrbitComplex& x, const std::string& sigma, const std::string& tau1,
                       const std::string& tau2)
{
    check_move_dims(x, sigma, tau1);
    check_move_dims(x, sigma, tau2);
    if (tau1 == tau2)
        return false;
    auto cofaces = x.cofaces_of(sigma);
    if (cofaces.size() != 2)
        return false;
    std::vector<std::string> ends;
    for (const Incidence* inc : cofaces) {
        if (inc->multiplicity != 1)
            return false;
        ends.push_back(inc->coface);
    }
    std::sort(ends.begin(), ends.end());
    std::vector<std::string> want{tau1, tau2};
    std::sort(want.begin(), want.end());
    if (ends != want)
        return false;
    for (const auto& t : want) {
        if (x.cell(t).self_identified)
            return false;
        if (!x.cofaces_of(t).empty())
            return false;
    }
    return true;
}

bool check_condition_A(const OrbitComplex& x, const std::string& sigma, const std::string& tau1,
                       const std::string& tau2)
{
    if (!condition_A_shape(x, sigma, tau1, tau2))
        return false;
    return are_isomorphic(catalog_group(x.cell(tau1).stabilizer), catalog_group(x.cell(tau2).stabilizer));
}

std::vector<std::pair<std::string, std::string>> find_terminal_cells(const OrbitComplex& x)
{
    std::vector<std::tuple<int, std::string, std::string>> found;
    for (const auto& c : x.cells) {
        auto cofaces = x.cofaces_of(c.id);
        if (cofaces.size() != 1 || cofaces.front()->multiplicity != 1)
            continue;
        const std::string& tau = cofaces.front()->coface;
        if (!x.cofaces_of(tau).empty())
            continue;
        found.emplace_back(c.dim, c.id, tau);
    }
    std::sort(found.begin(), found.end());
    std::vector<std::pair<std::string, std::string>> out;
    for (auto& [d, s, t] : found)
        out.emplace_back(s, t);
    return out;
}

std::string merged_id(const OrbitComplex& x, const std::string& tau1)
{
    std::string id = tau1 + "+";
    while (x.find(id))
        id += "+";
    return id;
}

OrbitComplex merge(const OrbitComplex& x, const MergeCandidate& c, int ell)
{
    if (!check_condition_A(x, c.sigma, c.tau1, c.tau2))
        throw ValidationError("Condition A fails for " + c.sigma + " between " + c.tau1 + " and " + c.tau2);
    if (!check_condition_B_prime(x.cell(c.sigma).stabilizer, x.cell(c.tau1).stabilizer, ell))
        throw ValidationError("Condition B' fails for " + c.sigma + " and " + c.tau1);
    return do_merge(x, c);
}

OrbitComplex merge_unchecked(const OrbitComplex& x, const MergeCandidate& c)
{
    if (!condition_A_shape(x, c.sigma, c.tau1, c.tau2))
        throw ValidationError("cells " + c.sigma + ", " + c.tau1 + ", " + c.tau2 + " do not form a mergeable pattern");
    return do_merge(x, c);
}

OrbitComplex cut(const OrbitComplex& x, const std::string& sigma, const std::string& tau, int ell)
{
    check_move_dims(x, sigma, tau);
    auto terminal = find_terminal_cells(x);
    if (std::find(terminal.begin(), terminal.end(), std::make_pair(sigma, tau)) == terminal.end())
        throw ValidationError("(" + sigma + ", " + tau + ") is not a terminal pair");
    if (!check_condition_B_prime(x.cell(sigma).stabilizer, x.cell(tau).stabilizer, ell))
        throw ValidationError("Condition B' fails for " + sigma + " and " + tau);
    OrbitComplex out;
    out.rigid = x.rigid;
    for (const auto& c : x.cells)
        if (c.id != sigma && c.id != tau)
            out.cells.push_back(c);
    out.incidences = filtered(x, {sigma, tau});
    return out;
}

std::string ReductionLog::to_jsonl() const
{
    std::string out;
    for (const auto& m : moves) {
        nlohmann::ordered_json j;
        j["kind"] = m.kind == MoveKind::Merge ? "merge" : "cut";
        j["cells"] = m.cells;
        if (!m.result.empty())
            j["result"] = m.result;
        j["condition"] = m.condition;
        out += j.dump() + "\n";
    }
    return out;
}

ReductionLog ReductionLog::from_jsonl(std::string_view text)
{
    ReductionLog log;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        try {
            auto j = nlohmann::json::parse(line);
            Move m;
            std::string kind = j.at("kind").get<std::string>();
            if (kind == "merge")
                m.kind = MoveKind::Merge;
            else if (kind == "cut")
                m.kind = MoveKind::Cut;
            else
                throw ValidationError("unknown move kind '" + kind + "'");
            m.cells = j.at("cells").get<std::vector<std::string>>();
            if (j.contains("result"))
                m.result = j["result"].get<std::string>();
            m.condition = j.at("condition").get<std::string>();
            std::size_t want = m.kind == MoveKind::Merge ? 3 : 2;
            if (m.cells.size() != want)
                throw ValidationError("wrong number of cells");
            log.moves.push_back(std::move(m));
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError("log line " + std::to_string(lineno) + ": " + e.what());
        } catch (const ValidationError& e) {
            throw ValidationError("log line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return log;
}

ReductionResult reduce(const OrbitComplex& x, int ell)
{
    ReductionResult r{torsion_subcomplex(x, ell), {}};
    OrbitComplex& cur = r.complex;
    for (;;) {
        bool moved = false;
        for (const auto& [sigma, tau] : find_terminal_cells(cur)) {
            auto clause = check_condition_B_prime(cur.cell(sigma).stabilizer, cur.cell(tau).stabilizer, ell);
            if (!clause)
                continue;
            r.log.moves.push_back({MoveKind::Cut, {sigma, tau}, "", to_string(*clause)});
            cur = cut(cur, sigma, tau, ell);
            moved = true;
            break;
        }
        if (moved)
            continue;
        std::vector<std::tuple<int, std::string, std::string, std::string>> merges;
        for (const auto& c : cur.cells) {
            auto cofaces = cur.cofaces_of(c.id);
            if (cofaces.size() != 2)
                continue;
            std::string a = cofaces[0]->coface, b = cofaces[1]->coface;
            if (b < a)
                std::swap(a, b);
            if (check_condition_A(cur, c.id, a, b))
                merges.emplace_back(c.dim, c.id, a, b);
        }
        std::sort(merges.begin(), merges.end());
        for (const auto& [d, sigma, tau1, tau2] : merges) {
            auto clause = check_condition_B_prime(cur.cell(sigma).stabilizer, cur.cell(tau1).stabilizer, ell);
            if (!clause)
                continue;
            MergeCandidate c{sigma, tau1, tau2};
            std::string id = merged_id(cur, tau1);
            r.log.moves.push_back({MoveKind::Merge, {sigma, tau1, tau2}, id, to_string(*clause)});
            cur = do_merge(cur, c);
            moved = true;
            break;
        }
        if (!moved)
            return r;
    }
}

void apply_scripted_merge(ReductionResult& r, const MergeCandidate& c)
{
    std::string id = merged_id(r.complex, c.tau1);
    r.complex = merge_unchecked(r.complex, c);
    r.log.moves.push_back({MoveKind::Merge, {c.sigma, c.tau1, c.tau2}, id, "scripted"});
}

OrbitComplex replay(const OrbitComplex& x, int ell, const ReductionLog& log)
{
    OrbitComplex cur = torsion_subcomplex(x, ell);
    for (const auto& m : log.moves) {
        if (m.kind == MoveKind::Cut) {
            auto clause = check_condition_B_prime(cur.cell(m.cells[0]).stabilizer, cur.cell(m.cells[1]).stabilizer, ell);
            if (!clause || to_string(*clause) != m.condition)
                throw InvariantError("replayed cut of " + m.cells[1] + " does not satisfy " + m.condition);
            cur = cut(cur, m.cells[0], m.cells[1], ell);
            continue;
        }
        MergeCandidate c{m.cells[0], m.cells[1], m.cells[2]};
        if (merged_id(cur, c.tau1) != m.result)
            throw InvariantError("replayed merge produces a different cell id than " + m.result);
        if (m.condition == "scripted") {
            cur = merge_unchecked(cur, c);
            continue;
        }
        auto clause = check_condition_B_prime(cur.cell(c.sigma).stabilizer, cur.cell(c.tau1).stabilizer, ell);
        if (!clause || to_string(*clause) != m.condition)
            throw InvariantError("replayed merge at " + c.sigma + " does not satisfy " + m.condition);
        cur = merge(cur, c, ell);
    }
    return cur;
}

}  // namespace tsr
