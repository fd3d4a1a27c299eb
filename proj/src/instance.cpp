#include "scut/instance.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace scut {

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": " + what);
}

bool looks_like_rational(const std::string& tok) {
    std::size_t i = 0;
    if (i < tok.size() && (tok[i] == '+' || tok[i] == '-')) ++i;
    std::size_t digits = 0;
    while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) { ++i; ++digits; }
    if (digits == 0) return false;
    if (i == tok.size()) return true;
    if (tok[i] != '/') return false;
    ++i;
    digits = 0;
    while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) { ++i; ++digits; }
    return digits > 0 && i == tok.size();
}

Rat parse_weight(const std::string& tok, int line_no) {
    if (!looks_like_rational(tok)) fail(line_no, "malformed weight '" + tok + "'");
    auto slash = tok.find('/');
    if (slash != std::string::npos &&
        tok.find_first_not_of('0', slash + 1) == std::string::npos)
        fail(line_no, "zero denominator in '" + tok + "'");
    Rat w = rat_from_str(tok);
    if (w <= 0) fail(line_no, "weight must be positive, got '" + tok + "'");
    return w;
}

int parse_int(const std::string& tok, int line_no, const std::string& what) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        if (v < 0 || v > 1'000'000'000) throw std::out_of_range(tok);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        fail(line_no, "malformed " + what + " '" + tok + "'");
    }
}

} // namespace

bool Instance::supply_connected() const {
    if (n <= 1) return true;
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : supply) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
    }
    return reached == n;
}

Instance parse_instance(const std::string& text) {
    Instance inst;
    bool have_header = false;
    long want_supply = 0, want_demand = 0;
    std::set<std::pair<int, int>> seen_supply, seen_demand;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue; // blank line
        if (head[0] == '#') continue;

        if (head == "p") {
            if (have_header) fail(line_no, "duplicate header");
            std::string fmt, ntok, mstok, mdtok, extra;
            if (!(ls >> fmt >> ntok >> mstok >> mdtok)) fail(line_no, "header needs 'p sc <n> <supply> <demand>'");
            if (ls >> extra) fail(line_no, "trailing token '" + extra + "'");
            if (fmt != "sc") fail(line_no, "unknown format '" + fmt + "', expected 'sc'");
            inst.n = parse_int(ntok, line_no, "node count");
            want_supply = parse_int(mstok, line_no, "supply count");
            want_demand = parse_int(mdtok, line_no, "demand count");
            if (inst.n < 2) fail(line_no, "need at least 2 nodes");
            if (want_demand < 1) fail(line_no, "need at least one demand edge");
            have_header = true;
            continue;
        }

        if (head == "s" || head == "d") {
            if (!have_header) fail(line_no, "edge before header");
            std::string utok, vtok, wtok, extra;
            if (!(ls >> utok >> vtok >> wtok)) fail(line_no, "edge needs '<u> <v> <weight>'");
            if (ls >> extra) fail(line_no, "trailing token '" + extra + "'");
            WeightedEdge e;
            e.u = parse_int(utok, line_no, "node id");
            e.v = parse_int(vtok, line_no, "node id");
            e.w = parse_weight(wtok, line_no);
            if (e.u >= inst.n || e.v >= inst.n) fail(line_no, "node id out of range");
            if (e.u == e.v) fail(line_no, "self-loop");
            auto key = std::minmax(e.u, e.v);
            auto& seen = (head == "s") ? seen_supply : seen_demand;
            if (!seen.insert(key).second) fail(line_no, "duplicate edge");
            ((head == "s") ? inst.supply : inst.demand).push_back(std::move(e));
            continue;
        }

        fail(line_no, "unknown line type '" + head + "'");
    }

    if (!have_header) fail(line_no, "missing header");
    if (static_cast<long>(inst.supply.size()) != want_supply)
        fail(line_no, "header promised " + std::to_string(want_supply) + " supply edges, got " +
                          std::to_string(inst.supply.size()));
    if (static_cast<long>(inst.demand.size()) != want_demand)
        fail(line_no, "header promised " + std::to_string(want_demand) + " demand edges, got " +
                          std::to_string(inst.demand.size()));
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_instance(buf.str());
}

std::string serialize_instance(const Instance& inst) {
    std::ostringstream out;
    out << "p sc " << inst.n << ' ' << inst.supply.size() << ' ' << inst.demand.size() << '\n';
    for (const auto& e : inst.supply) out << "s " << e.u << ' ' << e.v << ' ' << rat_str(e.w) << '\n';
    for (const auto& e : inst.demand) out << "d " << e.u << ' ' << e.v << ' ' << rat_str(e.w) << '\n';
    return out.str();
}

Cut make_cut(const Instance& inst, Mask side) {
    if (inst.n > 64) throw std::runtime_error("cut masks need n <= 64");
    Cut cut;
    cut.members = mask_to_list(side);
    cut.cap_cross = 0;
    cut.dem_cross = 0;
    for (const auto& e : inst.supply)
        if (has_bit(side, e.u) != has_bit(side, e.v)) cut.cap_cross += e.w;
    for (const auto& e : inst.demand)
        if (has_bit(side, e.u) != has_bit(side, e.v)) cut.dem_cross += e.w;
    if (cut.dem_cross != 0) cut.phi = cut.cap_cross / cut.dem_cross;
    return cut;
}

std::optional<Rat> sparsity(const Instance& inst, Mask side) {
    return make_cut(inst, side).phi;
}

} // namespace scut
