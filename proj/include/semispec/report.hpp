#pragma once

// Spectrum reports and the JSON/CSV emission helpers shared by the engines.

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

namespace semispec {

using cplx = std::complex<double>;

struct SpectrumPart {
    enum class Kind { disk, half_plane, points };
    Kind kind = Kind::points;
    // disk: centered at 0; closed_boundary distinguishes |l| <= r from < r
    double radius = 0.0;
    bool closed_boundary = false;
    // half_plane: Re(lambda) <= re_bound
    double re_bound = 0.0;
    // points, each carrying one shared provenance tag:
    // eigenvalue_formula | finite_section | theorem_assembly
    std::vector<cplx> pts;
    std::string provenance;

    static SpectrumPart disk(double radius, bool closed);
    static SpectrumPart half_plane(double re_bound);
    static SpectrumPart points(std::vector<cplx> pts, std::string provenance);
};

struct SpectrumReport {
    std::string operator_label;
    std::string derivation;  // one line on how the set was assembled
    std::vector<SpectrumPart> parts;
    std::vector<std::string> caveats;

    nlohmann::ordered_json to_json() const;
    // true when lambda lies in some part, with points matched to point_tol and
    // disks inflated by disk_slack
    bool contains(cplx lambda, double point_tol, double disk_slack = 0.0) const;
    const std::vector<cplx>* point_list() const;  // first points part, if any
};

// {"value": v, "method": m, "tol": t} -- every reported numeric carries these
nlohmann::ordered_json metric(double value, const std::string& method, double tol);

std::string format_double(double v);  // shortest round-trip-stable form

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace semispec
