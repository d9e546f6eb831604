#include "kakeya/json_io.hpp"

#include <fstream>
#include <sstream>

namespace kakeya {

Json family_to_json(const TubeFamily& f) {
    Json j;
    j["schema_version"] = 1;
    j["d"] = f.d;
    j["delta"] = f.delta;
    j["window"] = {f.window.first, f.window.second};
    Json tubes = Json::array();
    for (const auto& t : f.tubes) {
        Json jt;
        jt["origin"] = t.origin;
        jt["direction"] = t.direction;
        tubes.push_back(jt);
    }
    j["tubes"] = std::move(tubes);
    j["meta"] = {{"name", f.meta.name}, {"seed", f.meta.seed}, {"params", f.meta.params}};
    return j;
}

TubeFamily family_from_json(const Json& j) {
    TubeFamily f;
    f.d = j.at("d").get<int>();
    f.delta = j.at("delta").get<double>();
    auto w = j.at("window");
    f.window = {w.at(0).get<double>(), w.at(1).get<double>()};
    for (const auto& jt : j.at("tubes"))
        f.tubes.push_back(make_tube(f.d, jt.at("origin").get<std::vector<double>>(),
                                    jt.at("direction").get<std::vector<double>>(), f.delta,
                                    f.window));
    if (j.contains("meta")) {
        const auto& m = j.at("meta");
        f.meta.name = m.value("name", std::string{});
        f.meta.seed = m.value("seed", std::uint64_t{0});
        if (m.contains("params"))
            f.meta.params = m.at("params").get<std::map<std::string, double>>();
    }
    f.validate();
    return f;
}

Json report_to_json(const BoundReport& r) {
    Json j;
    j["schema_version"] = 1;
    j["name"] = r.name;
    j["value"] = r.value;
    j["params"] = r.params;
    j["provenance"] = r.provenance;
    j["error_estimate"] = r.error_estimate;
    j["flags"] = r.flags;
    j["verdict"] = r.verdict;
    return j;
}

BoundReport report_from_json(const Json& j) {
    BoundReport r;
    r.name = j.at("name").get<std::string>();
    r.value = j.at("value").get<double>();
    r.params = j.at("params").get<std::map<std::string, double>>();
    r.provenance = j.at("provenance").get<std::vector<std::string>>();
    r.error_estimate = j.at("error_estimate").get<double>();
    r.flags = j.at("flags").get<std::vector<std::string>>();
    r.verdict = j.value("verdict", std::string{});
    return r;
}

Json curve_to_json(const FCurve& c) {
    Json pts = Json::array();
    for (const auto& p : c.points)
        pts.push_back({{"k", p.k},
                       {"delta", p.delta},
                       {"epsilon", p.epsilon},
                       {"err", p.error_bound},
                       {"certificate", p.certificate}});
    Json j;
    j["schema_version"] = 1;
    j["mode"] = c.mode;
    j["points"] = std::move(pts);
    j["fit_C"] = c.fit_C;
    j["fit_done"] = c.fit_done;
    j["residuals"] = c.residuals;
    return j;
}

FCurve curve_from_json(const Json& j) {
    FCurve c;
    c.mode = j.value("mode", std::string{});
    for (const auto& jp : j.at("points")) {
        FCurvePoint p;
        p.k = jp.at("k").get<int>();
        p.delta = jp.at("delta").get<double>();
        p.epsilon = jp.at("epsilon").get<double>();
        p.error_bound = jp.value("err", 0.0);
        p.certificate = jp.value("certificate", false);
        c.points.push_back(p);
    }
    c.fit_C = j.value("fit_C", 0.0);
    c.fit_done = j.value("fit_done", false);
    if (j.contains("residuals")) c.residuals = j.at("residuals").get<std::vector<double>>();
    return c;
}

void write_curve_csv(const std::string& path, const FCurve& c) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "k,delta,epsilon,err,certificate\n";
    out.precision(17);
    for (const auto& p : c.points)
        out << p.k << ',' << p.delta << ',' << p.epsilon << ',' << p.error_bound << ','
            << (p.certificate ? 1 : 0) << '\n';
}

FCurve read_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    FCurve c;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() < 3) continue;
        FCurvePoint p;
        try {
            p.k = std::stoi(cells[0]);
            p.delta = std::stod(cells[1]);
            p.epsilon = std::stod(cells[2]);
        } catch (...) {
            continue;  // header
        }
        if (cells.size() > 3) p.error_bound = std::stod(cells[3]);
        if (cells.size() > 4) p.certificate = std::stoi(cells[4]) != 0;
        c.points.push_back(p);
    }
    if (c.points.empty()) throw std::runtime_error("curve CSV " + path + " has no data rows");
    // fit through the origin against 1/|log delta|
    if (c.points.size() >= 2) {
        double sxx = 0.0, sxy = 0.0;
        for (const auto& p : c.points) {
            double x = 1.0 / std::abs(std::log(p.delta));
            sxx += x * x;
            sxy += x * p.epsilon;
        }
        c.fit_C = sxy / sxx;
        c.fit_done = true;
    }
    return c;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

}  // namespace kakeya
