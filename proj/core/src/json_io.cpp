#include "lyutab/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lyutab/errors.hpp"

namespace lyutab {

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid JSON");
    return j;
}

std::uint32_t generator_from_json(const json& g, int n) {
    if (g.is_string()) return parse_monomial(g.get<std::string>(), n);
    if (g.is_array()) {
        if (static_cast<int>(g.size()) != n)
            throw ParseError("exponent array length must equal vars");
        std::uint32_t mask = 0;
        for (int k = 0; k < n; ++k) {
            if (!g[k].is_number_integer() || g[k].get<long>() < 0)
                throw ParseError("exponents must be naturals");
            long e = g[k].get<long>();
            if (e > 1) throw NotSquareFreeError("exponent " + std::to_string(e));
            if (e == 1) mask |= 1u << k;
        }
        if (mask == 0) throw ParseError("a generator must not be a unit");
        return mask;
    }
    throw ParseError("generators must be monomial strings or exponent arrays");
}

} // namespace

IdealInput parse_ideal_json(const std::string& text) {
    json j = parse_or_throw(text);
    if (!j.is_object() || !j.contains("vars") || !j.contains("gens"))
        throw ParseError("ideal JSON needs \"vars\" and \"gens\"");
    if (!j["vars"].is_number_integer()) throw ParseError("\"vars\" must be an integer");
    const int n = j["vars"].get<int>();
    if (n < 1 || n > 25) throw ParseError("\"vars\" out of range");
    if (!j["gens"].is_array()) throw ParseError("\"gens\" must be an array");

    IdealInput input;
    input.ideal.n = n;
    for (const auto& g : j["gens"]) input.ideal.gens.push_back(generator_from_json(g, n));
    input.ideal = minimalize(std::move(input.ideal));
    if (j.contains("p")) {
        if (!j["p"].is_number_integer() || j["p"].get<long>() < 2)
            throw ParseError("\"p\" must be a prime");
        input.p = j["p"].get<std::uint64_t>();
        CoefficientRing::check_prime(input.p);
    }
    if (j.contains("include_p")) {
        if (!j["include_p"].is_boolean()) throw ParseError("\"include_p\" must be a bool");
        input.include_p = j["include_p"].get<bool>();
    }
    return input;
}

IdealInput load_ideal_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_ideal_json(buffer.str());
}

std::string ideal_to_json(const IdealInput& input) {
    json j;
    j["vars"] = input.ideal.n;
    j["gens"] = json::array();
    for (std::uint32_t g : input.ideal.gens) j["gens"].push_back(monomial_to_string(g));
    j["include_p"] = input.include_p;
    j["p"] = input.p;
    return j.dump(2);
}

std::string table_to_json(const LyubeznikTable& table) {
    json j;
    j["mode"] = table.mode == RingSpec::Mode::EqualChar ? "equal" : "mixed";
    j["d"] = table.d;
    j["entries"] = table.entries;
    j["provenance"] = {{"pipeline", table.provenance.pipeline},
                       {"p", table.provenance.p},
                       {"include_p", table.provenance.include_p},
                       {"window_lo", table.provenance.window.lo},
                       {"window_hi", table.provenance.window.hi},
                       {"certified_level", table.provenance.certified_level},
                       {"levels_used", table.provenance.levels_used}};
    return j.dump(2);
}

LyubeznikTable table_from_json(const std::string& text) {
    json j = parse_or_throw(text);
    LyubeznikTable table;
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "equal")
        table.mode = RingSpec::Mode::EqualChar;
    else if (mode == "mixed")
        table.mode = RingSpec::Mode::Mixed;
    else
        throw ParseError("unknown table mode '" + mode + "'");
    table.d = j.at("d").get<int>();
    table.entries = j.at("entries").get<std::vector<std::vector<std::uint64_t>>>();
    const json& prov = j.at("provenance");
    table.provenance.pipeline = prov.at("pipeline").get<std::string>();
    table.provenance.p = prov.at("p").get<std::uint64_t>();
    table.provenance.include_p = prov.at("include_p").get<bool>();
    table.provenance.window.lo = prov.at("window_lo").get<std::vector<int>>();
    table.provenance.window.hi = prov.at("window_hi").get<std::vector<int>>();
    table.provenance.certified_level = prov.at("certified_level").get<std::uint32_t>();
    table.provenance.levels_used = prov.at("levels_used").get<std::uint32_t>();
    return table;
}

std::string render_table_text(const LyubeznikTable& table) {
    std::ostringstream os;
    os << (table.mode == RingSpec::Mode::EqualChar ? "equal characteristic"
                                                   : "mixed characteristic")
       << " p=" << table.provenance.p;
    if (table.mode == RingSpec::Mode::Mixed)
        os << (table.provenance.include_p ? " (p in the ideal)" : " (p not in the ideal)");
    os << ", d=" << table.d << "\n";

    std::size_t width = 3;
    for (const auto& row : table.entries)
        for (std::uint64_t v : row)
            width = std::max(width, std::to_string(v).size() + 1);
    auto pad = [&](const std::string& s) {
        os << std::string(width > s.size() ? width - s.size() : 1, ' ') << s;
    };

    os << "i\\j";
    for (int j = 0; j <= table.d; ++j) pad(std::to_string(j));
    os << "\n";
    for (int i = 0; i <= table.d; ++i) {
        os << "i=" << i;
        for (int j = 0; j <= table.d; ++j) pad(std::to_string(table.at(i, j)));
        os << "\n";
    }

    os << "pipeline=" << table.provenance.pipeline;
    os << " window=[";
    for (std::size_t k = 0; k < table.provenance.window.lo.size(); ++k) {
        if (k) os << " ";
        os << table.provenance.window.lo[k] << ".." << table.provenance.window.hi[k];
    }
    os << "]";
    if (table.provenance.levels_used > 0)
        os << " levels=" << table.provenance.levels_used
           << " certified=" << table.provenance.certified_level;
    os << "\n";
    return os.str();
}

} // namespace lyutab
