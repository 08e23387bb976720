#include "migratepack/io.hpp"

#include <json.hpp>

#include <istream>
#include <ostream>
#include <sstream>

namespace migratepack {

namespace {

Rational parse_or_throw(const std::string& tok) {
    auto r = parse_rational(tok);
    if (!r) throw IoError("malformed rational: '" + tok + "'");
    return *r;
}

}  // namespace

Lp read_lp(std::istream& in) {
    int m, n;
    if (!(in >> m >> n)) throw IoError("lp header must be 'm n'");
    if (m <= 0 || n <= 0) throw IoError("lp dimensions must be positive");
    Lp lp(m, n);
    std::string tok;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            if (!(in >> tok)) throw IoError("lp matrix truncated");
            lp.a[i][j] = parse_or_throw(tok);
        }
    for (int i = 0; i < m; ++i) {
        if (!(in >> tok)) throw IoError("lp rhs truncated");
        lp.b[i] = parse_or_throw(tok);
    }
    lp.validate();
    return lp;
}

void write_lp(std::ostream& out, const Lp& lp) {
    out << lp.rows << " " << lp.cols << "\n";
    for (int i = 0; i < lp.rows; ++i) {
        for (int j = 0; j < lp.cols; ++j) out << (j ? " " : "") << rat_to_fraction(lp.a[i][j]);
        out << "\n";
    }
    for (int i = 0; i < lp.rows; ++i) out << (i ? " " : "") << rat_to_fraction(lp.b[i]);
    out << "\n";
}

LpSolution read_solution(std::istream& in) {
    LpSolution x;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        int idx;
        std::string tok;
        if (!(ls >> idx >> tok)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw IoError("malformed solution line: '" + line + "'");
        }
        Rational v = parse_or_throw(tok);
        if (v < 0) throw IoError("solution values must be non-negative");
        if (v > 0) x.set(idx, v);
    }
    return x;
}

void write_solution(std::ostream& out, const LpSolution& x) {
    for (const auto& [i, v] : x.values) out << i << " " << rat_to_fraction(v) << "\n";
}

std::vector<Item> read_items_jsonl(std::istream& in) {
    std::vector<Item> items;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        Item it;
        it.id = j.at("id").get<int>();
        it.size = parse_or_throw(j.at("size").get<std::string>());
        if (it.size <= 0 || it.size > 1) throw IoError("item size outside (0,1]");
        items.push_back(it);
    }
    return items;
}

void write_items_jsonl(std::ostream& out, const std::vector<Item>& items) {
    for (const auto& it : items) {
        nlohmann::json j;
        j["id"] = it.id;
        j["size"] = rat_to_fraction(it.size);
        out << j.dump() << "\n";
    }
}

PackingState read_packing_json(std::istream& in) {
    nlohmann::json j = nlohmann::json::parse(in);
    PackingState st;
    for (auto it = j.begin(); it != j.end(); ++it) {
        int bin = std::stoi(it.key());
        st.bins[bin] = it.value().get<std::vector<int>>();
    }
    return st;
}

void write_packing_json(std::ostream& out, const PackingState& packing) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [bin, ids] : packing.bins) j[std::to_string(bin)] = ids;
    out << j.dump(2) << "\n";
}

void write_trace_jsonl(std::ostream& out, const std::vector<TraceRecord>& trace) {
    for (const auto& r : trace) {
        nlohmann::json j;
        j["t"] = r.t;
        j["op"] = r.op;
        j["j"] = r.j;
        j["group_sizes"] = r.group_sizes;
        std::vector<std::string> lams;
        for (const auto& v : r.lambda_sizes) lams.push_back(rat_to_fraction(v));
        j["lambda_sizes"] = lams;
        j["x_norm"] = rat_to_fraction(r.x_norm);
        j["y_norm"] = r.y_norm;
        j["r0"] = r.r0;
        out << j.dump() << "\n";
    }
}

std::vector<TraceRecord> read_trace_jsonl(std::istream& in) {
    std::vector<TraceRecord> trace;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        TraceRecord r;
        r.t = j.at("t").get<long>();
        r.op = j.at("op").get<std::string>();
        r.j = j.at("j").get<int>();
        r.group_sizes = j.at("group_sizes").get<std::vector<long>>();
        for (const auto& s : j.at("lambda_sizes").get<std::vector<std::string>>())
            r.lambda_sizes.push_back(parse_or_throw(s));
        r.x_norm = parse_or_throw(j.at("x_norm").get<std::string>());
        r.y_norm = j.at("y_norm").get<long>();
        r.r0 = j.at("r0").get<long>();
        trace.push_back(std::move(r));
    }
    return trace;
}

DeterministicRng::DeterministicRng(unsigned long long seed) : state(seed) {
    if (state == 0) state = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < 8; ++i) next_u64();
}

unsigned long long DeterministicRng::next_u64() {
    // splitmix64 step
    state += 0x9e3779b97f4a7c15ull;
    unsigned long long z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

unsigned long long DeterministicRng::next_below(unsigned long long bound) {
    if (bound == 0) throw IoError("rng bound must be positive");
    unsigned long long limit = ~0ull - (~0ull % bound);
    unsigned long long v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % bound;
}

std::vector<Item> gen_items(long count, const std::string& spec, unsigned long long seed) {
    if (count < 0) throw BadRange("count must be non-negative");
    std::vector<std::string> parts;
    {
        std::istringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ':')) parts.push_back(tok);
    }
    std::vector<Item> out;
    if (!parts.empty() && parts[0] == "uniform") {
        if (parts.size() < 3) throw BadRange("uniform spec needs uniform:LO:HI[:DENOM]");
        Rational lo = parse_or_throw(parts[1]);
        Rational hi = parse_or_throw(parts[2]);
        long denom = parts.size() > 3 ? std::stol(parts[3]) : 48;
        if (denom <= 0) throw BadRange("denominator must be positive");
        if (!(0 < lo && lo <= hi && hi <= 1)) throw BadRange("need 0 < lo <= hi <= 1");
        long klo = rat_ceil(lo * denom);
        long khi = rat_floor(hi * denom);
        if (klo > khi) throw BadRange("no representable size in [lo, hi] with this denominator");
        DeterministicRng rng(seed);
        for (long i = 0; i < count; ++i) {
            long k = klo + static_cast<long>(rng.next_below(
                               static_cast<unsigned long long>(khi - klo + 1)));
            out.push_back(Item{static_cast<int>(i + 1), make_rat(k, denom)});
        }
        return out;
    }
    if (!parts.empty() && parts[0] == "fixed") {
        if (parts.size() < 2) throw BadRange("fixed spec needs fixed:s1,s2,...");
        std::vector<Rational> sizes;
        std::istringstream ss(parts[1]);
        std::string tok;
        while (std::getline(ss, tok, ',')) sizes.push_back(parse_or_throw(tok));
        if (sizes.empty()) throw BadRange("fixed spec lists no sizes");
        for (long i = 0; i < count; ++i)
            out.push_back(Item{static_cast<int>(i + 1), sizes[i % sizes.size()]});
        return out;
    }
    throw BadRange("unknown distribution spec: '" + spec + "'");
}

}  // namespace migratepack
