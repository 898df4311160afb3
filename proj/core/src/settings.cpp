#include "tjade/settings.hpp"

#include <Eigen/SVD>

namespace tjade {

namespace {

double condition_number(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& s = svd.singularValues();
    const double smin = s(s.size() - 1);
    return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

SettingSpec make_grid3x4() {
    // appendix order, top-left then down and right = vec order
    return {"grid3x4",
            {3, 4},
            {"uniform", "triangular", "normal", "t10", "gamma3", "laplace", "chisq3", "gamma12",
             "exp", "chisq15", "chisq12", "invgauss"}};
}

SettingSpec make_setting(int which) {
    // two 3x3 faces, cells listed column-major per face
    static const char* s1[] = {"N", "L", "E", "L", "L", "E", "E", "E", "E",
                               "U", "U", "U", "U", "L", "L", "U", "L", "E"};
    static const char* s2[] = {"N", "L", "L", "L", "L", "L", "L", "L", "L",
                               "U", "U", "U", "U", "L", "L", "U", "L", "L"};
    static const char* s3[] = {"E", "E", "N", "E", "E", "N", "N", "N", "N",
                               "N", "N", "N", "N", "N", "N", "N", "N", "N"};
    const char** src = which == 1 ? s1 : which == 2 ? s2 : s3;
    SettingSpec spec;
    spec.name = "setting" + std::to_string(which);
    spec.dims = {3, 3, 2};
    for (int i = 0; i < 18; ++i) spec.cells.push_back(catalog(src[i]).name);
    return spec;
}

SettingSpec make_gauss3x4() {
    SettingSpec spec;
    spec.name = "gauss3x4";
    spec.dims = {3, 4};
    spec.cells.assign(12, "normal");
    return spec;
}

}  // namespace

MixingKind mixing_from_name(std::string_view name) {
    if (name == "identity") return MixingKind::Identity;
    if (name == "orthogonal" || name == "haar") return MixingKind::Orthogonal;
    if (name == "gaussian") return MixingKind::Gaussian;
    if (name == "uniform") return MixingKind::Uniform;
    throw ArgumentError("unknown mixing kind: " + std::string(name));
}

std::string to_string(MixingKind kind) {
    switch (kind) {
        case MixingKind::Identity: return "identity";
        case MixingKind::Orthogonal: return "orthogonal";
        case MixingKind::Gaussian: return "gaussian";
        case MixingKind::Uniform: return "uniform";
    }
    return "?";
}

std::vector<Matrix> draw_mixing(MixingKind kind, std::span<const int> dims, Rng& rng) {
    std::vector<Matrix> mats;
    mats.reserve(dims.size());
    for (int p : dims) {
        switch (kind) {
            case MixingKind::Identity:
                mats.push_back(Matrix::Identity(p, p));
                break;
            case MixingKind::Orthogonal:
                mats.push_back(haar_orthogonal(p, rng));
                break;
            case MixingKind::Gaussian:
            case MixingKind::Uniform: {
                Matrix m(p, p);
                do {
                    for (Eigen::Index j = 0; j < p; ++j)
                        for (Eigen::Index i = 0; i < p; ++i)
                            m(i, j) = kind == MixingKind::Gaussian ? rng.normal()
                                                                   : rng.uniform(-1.0, 1.0);
                } while (condition_number(m) > 1e6);
                mats.push_back(std::move(m));
                break;
            }
        }
    }
    return mats;
}

std::int64_t SettingSpec::tensor_size() const {
    std::int64_t sz = 1;
    for (int p : dims) sz *= p;
    return sz;
}

const DistributionSpec& SettingSpec::cell(std::int64_t flat) const {
    return catalog(cells.at(static_cast<std::size_t>(flat)));
}

void SettingSpec::validate() const {
    if (dims.empty()) throw ArgumentError("setting has no dims");
    for (int p : dims)
        if (p < 1) throw ArgumentError("setting dims must be positive");
    if (static_cast<std::int64_t>(cells.size()) != tensor_size())
        throw ArgumentError("setting needs one distribution per tensor cell");
    for (const std::string& c : cells) catalog(c);  // throws on unknown names
}

SettingSpec builtin_setting(std::string_view name) {
    if (name == "grid3x4") return make_grid3x4();
    if (name == "setting1") return make_setting(1);
    if (name == "setting2") return make_setting(2);
    if (name == "setting3") return make_setting(3);
    if (name == "gauss3x4") return make_gauss3x4();
    throw ArgumentError("unknown setting: " + std::string(name));
}

bool is_builtin_setting(std::string_view name) {
    for (const std::string& s : builtin_setting_names())
        if (s == name) return true;
    return false;
}

const std::vector<std::string>& builtin_setting_names() {
    static const std::vector<std::string> names = {"grid3x4", "setting1", "setting2", "setting3",
                                                   "gauss3x4"};
    return names;
}

Sample draw_sample(const SettingSpec& setting, std::int64_t n, Rng& rng) {
    setting.validate();
    Sample s(setting.dims, n);
    for (std::int64_t cell = 0; cell < setting.tensor_size(); ++cell) {
        const DistributionSpec& spec = setting.cell(cell);
        for (std::int64_t i = 0; i < n; ++i) s.data()(cell, i) = sample_one(spec, rng);
    }
    return s;
}

}  // namespace tjade
