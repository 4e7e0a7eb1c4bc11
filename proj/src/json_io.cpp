#include "vkh/json_io.hpp"

#include <fstream>

#include "json.hpp"

namespace vkh {

using nlohmann::ordered_json;

Diagram parse_diagram(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
    try {
        std::string name = j.value("name", "");
        int free_loops = j.value("free_loops", 0);
        std::vector<Crossing> crossings;
        for (auto& cj : j.value("crossings", ordered_json::array())) {
            Crossing c;
            c.id = cj.at("id").get<int>();
            std::string kind = cj.at("kind").get<std::string>();
            if (kind == "classical")
                c.kind = CrossingKind::Classical;
            else if (kind == "virtual")
                c.kind = CrossingKind::Virtual;
            else
                throw ValidationError("crossing " + std::to_string(c.id) +
                                      ": unknown kind '" + kind + "'");
            auto& dj = cj.at("darts");
            if (!dj.is_array() || dj.size() != 4)
                throw ValidationError("crossing " + std::to_string(c.id) +
                                      ": darts must be 4 ints");
            for (int s = 0; s < 4; ++s) c.darts[s] = dj[s].get<int>();
            crossings.push_back(c);
        }
        std::vector<Edge> edges;
        for (auto& ej : j.value("edges", ordered_json::array()))
            edges.push_back({ej.at("tail").get<int>(), ej.at("head").get<int>()});
        int outer = j.value("outer_face_dart", -1);
        std::vector<int> order;
        if (j.contains("crossing_order"))
            for (auto& oj : j["crossing_order"]) order.push_back(oj.get<int>());
        else
            for (auto& c : crossings)
                if (c.kind == CrossingKind::Classical) order.push_back(c.id);
        return Diagram(name, free_loops, std::move(crossings), std::move(edges),
                       outer, std::move(order));
    } catch (const ordered_json::exception& e) {
        throw ValidationError(std::string("bad diagram fields: ") + e.what());
    }
}

Diagram load_diagram(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_diagram(text);
}

std::string diagram_to_json(const Diagram& d) {
    ordered_json j;
    j["name"] = d.name;
    j["free_loops"] = d.free_loops;
    j["crossings"] = ordered_json::array();
    for (auto& c : d.crossings) {
        ordered_json cj;
        cj["id"] = c.id;
        cj["kind"] = c.kind == CrossingKind::Classical ? "classical" : "virtual";
        cj["darts"] = {c.darts[0], c.darts[1], c.darts[2], c.darts[3]};
        j["crossings"].push_back(cj);
    }
    j["edges"] = ordered_json::array();
    for (auto& e : d.edges) j["edges"].push_back({{"tail", e.tail}, {"head", e.head}});
    j["outer_face_dart"] = d.outer_face_dart;
    j["crossing_order"] = d.crossing_order;
    return j.dump(2);
}

}  // namespace vkh
