#include "gsb/scenario_io.hpp"

#include <fstream>
#include <sstream>

namespace gsb {

namespace {

double number_field(const nlohmann::json& j, const char* key, std::optional<double> fallback) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
    }
    const auto& v = j.at(key);
    if (!v.is_number()) throw Error(ErrorCode::ParseError, std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

}  // namespace

RawScenario parse_raw_scenario(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "scenario must be a JSON object");

    RawScenario raw;
    raw.power = number_field(j, "power", std::nullopt);
    raw.bandwidth = number_field(j, "bandwidth", 1.0);
    raw.source_var = number_field(j, "source_var", 1.0);
    if (!j.contains("noises") || !j.at("noises").is_array()) {
        throw Error(ErrorCode::ParseError, "field 'noises' must be an array");
    }
    for (const auto& n : j.at("noises")) {
        if (!n.is_number()) throw Error(ErrorCode::ParseError, "noise entries must be numbers");
        raw.noises.push_back(n.get<double>());
    }
    return raw;
}

BroadcastScenario parse_scenario(std::string_view text) {
    return validate_scenario(parse_raw_scenario(text));
}

BroadcastScenario read_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open scenario file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

nlohmann::json to_json(const BroadcastScenario& s) {
    return {
        {"power", s.power()},
        {"noises", std::vector<double>(s.noises().begin(), s.noises().end())},
        {"bandwidth", s.bandwidth()},
        {"source_var", s.source_var()},
    };
}

nlohmann::json to_json(ExtReal x) {
    if (x.is_inf()) return "inf";
    return x.value();
}

}  // namespace gsb
