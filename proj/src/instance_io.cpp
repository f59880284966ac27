#include "packbound/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace packbound {

namespace {

ExactNumber number_field(const Json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) throw std::invalid_argument(std::string("missing field '") + key + "'");
    const Json& v = j.at(key);
    if (!v.is_string()) throw std::invalid_argument(std::string("field '") + key + "' must be a \"num/den\" string");
    return ExactNumber::parse(v.get<std::string>());
}

}  // namespace

VariantRules rules_from_json(const Json& j) {
    const std::string name = j.value("variant", std::string("oned"));
    if (name == "oned") return VariantRules::one_d();
    if (name == "ko" || name == "known-opt") {
        const long advice = j.value("advice", 0L);
        if (advice <= 0) throw std::invalid_argument("known-opt instance needs a positive \"advice\"");
        return VariantRules::known_opt(advice);
    }
    if (name == "sp" || name == "squares") return VariantRules::squares();
    if (name == "clcbp" || name == "class-constrained") {
        const int t = j.value("t", 0);
        if (t < 1) throw std::invalid_argument("class-constrained instance needs \"t\" >= 1");
        return VariantRules::class_constrained(t);
    }
    throw std::invalid_argument("unknown variant '" + name + "'");
}

Json rules_to_json(const VariantRules& rules) {
    Json j;
    switch (rules.kind) {
        case VariantKind::OneD: j["variant"] = "oned"; break;
        case VariantKind::KnownOpt:
            j["variant"] = "ko";
            j["advice"] = rules.advice;
            break;
        case VariantKind::Squares: j["variant"] = "sp"; break;
        case VariantKind::ClassConstrained:
            j["variant"] = "clcbp";
            j["t"] = rules.colors_per_bin;
            break;
    }
    return j;
}

Json item_to_json(const Item& item, const std::optional<Placement>& placement) {
    Json j;
    j["id"] = item.id;
    j["size"] = item.size.to_string();
    j["color"] = item.color ? Json(*item.color) : Json(nullptr);
    if (placement && placement->position) {
        j["x"] = placement->position->x.to_string();
        j["y"] = placement->position->y.to_string();
    } else {
        j["x"] = nullptr;
        j["y"] = nullptr;
    }
    if (!item.label.empty()) j["label"] = item.label;
    if (placement) j["bin"] = placement->bin;
    return j;
}

Json packing_to_json(const Packing& packing) {
    Json j = rules_to_json(packing.rules());
    j["cost"] = packing.cost();
    Json bins = Json::array();
    for (const auto& bin : packing.bins()) {
        Json b = Json::array();
        for (const auto& placed : bin.items) b.push_back(item_to_json(placed.item, placed.placement));
        bins.push_back(std::move(b));
    }
    j["bins"] = std::move(bins);
    return j;
}

Instance instance_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("instance must be a JSON object");
    Instance out;
    out.rules = rules_from_json(j);
    if (!j.contains("items") || !j.at("items").is_array()) throw std::invalid_argument("instance needs an \"items\" array");
    std::size_t next_id = 0;
    for (const auto& ji : j.at("items")) {
        Item item;
        item.id = ji.contains("id") ? ji.at("id").get<std::size_t>() : next_id;
        next_id = item.id + 1;
        item.size = number_field(ji, "size");
        if (ji.contains("color") && !ji.at("color").is_null()) item.color = ji.at("color").get<ColorId>();
        item.label = ji.value("label", std::string());
        std::optional<Placement> placement;
        const bool has_xy = ji.contains("x") && !ji.at("x").is_null();
        if (ji.contains("bin") || has_xy) {
            Placement p;
            p.bin = ji.value("bin", std::size_t{0});
            if (has_xy) p.position = Point{number_field(ji, "x"), number_field(ji, "y")};
            placement = p;
        }
        out.items.push_back(std::move(item));
        out.placements.push_back(placement);
    }
    return out;
}

Json instance_to_json(const Instance& instance) {
    Json j = rules_to_json(instance.rules);
    Json items = Json::array();
    for (std::size_t i = 0; i < instance.items.size(); ++i) {
        const auto placement = i < instance.placements.size() ? instance.placements[i] : std::nullopt;
        items.push_back(item_to_json(instance.items[i], placement));
    }
    j["items"] = std::move(items);
    return j;
}

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    Json j;
    try {
        j = Json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("instance file '" + path + "' is not valid JSON: " + e.what());
    }
    return instance_from_json(j);
}

Packing instance_packing(const Instance& instance) {
    std::vector<std::vector<PlacedItem>> bins;
    for (std::size_t i = 0; i < instance.items.size(); ++i) {
        if (i >= instance.placements.size() || !instance.placements[i]) {
            throw std::invalid_argument("item " + std::to_string(instance.items[i].id) + " has no placement");
        }
        const Placement& p = *instance.placements[i];
        if (bins.size() <= p.bin) bins.resize(p.bin + 1);
        bins[p.bin].push_back(PlacedItem{instance.items[i], p});
    }
    return Packing::unchecked(instance.rules, bins);
}

}  // namespace packbound
