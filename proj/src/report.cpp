#include "semispec/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "semispec/errors.hpp"

namespace semispec {

SpectrumPart SpectrumPart::disk(double radius, bool closed) {
    SpectrumPart p;
    p.kind = Kind::disk;
    p.radius = radius;
    p.closed_boundary = closed;
    return p;
}

SpectrumPart SpectrumPart::half_plane(double re_bound) {
    SpectrumPart p;
    p.kind = Kind::half_plane;
    p.re_bound = re_bound;
    return p;
}

SpectrumPart SpectrumPart::points(std::vector<cplx> pts, std::string provenance) {
    SpectrumPart p;
    p.kind = Kind::points;
    p.pts = std::move(pts);
    p.provenance = std::move(provenance);
    return p;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::ordered_json metric(double value, const std::string& method, double tol) {
    nlohmann::ordered_json j;
    j["value"] = value;
    j["method"] = method;
    j["tol"] = tol;
    return j;
}

nlohmann::ordered_json SpectrumReport::to_json() const {
    nlohmann::ordered_json j;
    j["operator"] = operator_label;
    j["derivation"] = derivation;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& part : parts) {
        nlohmann::ordered_json p;
        switch (part.kind) {
            case SpectrumPart::Kind::disk:
                p["kind"] = "disk";
                p["radius"] = part.radius;
                p["boundary"] = part.closed_boundary ? "closed" : "open";
                break;
            case SpectrumPart::Kind::half_plane:
                p["kind"] = "half_plane";
                p["re_bound"] = part.re_bound;
                break;
            case SpectrumPart::Kind::points: {
                p["kind"] = "points";
                auto pts = nlohmann::ordered_json::array();
                for (const cplx& z : part.pts) pts.push_back({z.real(), z.imag()});
                p["values"] = pts;
                p["provenance"] = part.provenance;
                break;
            }
        }
        arr.push_back(p);
    }
    j["parts"] = arr;
    j["caveats"] = caveats;
    return j;
}

bool SpectrumReport::contains(cplx lambda, double point_tol, double disk_slack) const {
    for (const auto& part : parts) {
        switch (part.kind) {
            case SpectrumPart::Kind::disk: {
                const double m = std::abs(lambda);
                const double r = part.radius + disk_slack;
                if (part.closed_boundary ? m <= r : m < r) return true;
                break;
            }
            case SpectrumPart::Kind::half_plane:
                if (lambda.real() <= part.re_bound) return true;
                break;
            case SpectrumPart::Kind::points:
                for (const cplx& z : part.pts)
                    if (std::abs(z - lambda) <= point_tol) return true;
                break;
        }
    }
    return false;
}

const std::vector<cplx>* SpectrumReport::point_list() const {
    for (const auto& part : parts)
        if (part.kind == SpectrumPart::Kind::points) return &part.pts;
    return nullptr;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw domain_error("write_csv: cannot open " + path);
    for (size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i)
            out << format_double(row[i]) << (i + 1 < row.size() ? "," : "\n");
    }
}

}  // namespace semispec
