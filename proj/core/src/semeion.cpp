#include "tjade/semeion.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <sstream>

namespace tjade {

namespace {

constexpr int kSide = 16;
constexpr int kPixels = kSide * kSide;
constexpr int kFields = kPixels + 10;

// published semeion class sizes for digits 0..9 (total 1593)
constexpr std::array<int, 10> kClassCounts = {161, 162, 159, 159, 161, 159, 161, 158, 155, 158};

// 16x16 stroke templates ('#' = ink)
const std::array<std::array<const char*, 16>, 10>& templates() {
    static const std::array<std::array<const char*, 16>, 10> t = {{
        {  // 0
            "                ",
            "     ######     ",
            "    ##    ##    ",
            "   ##      ##   ",
            "   ##      ##   ",
            "  ##        ##  ",
            "  ##        ##  ",
            "  ##        ##  ",
            "  ##        ##  ",
            "  ##        ##  ",
            "  ##        ##  ",
            "   ##      ##   ",
            "   ##      ##   ",
            "    ##    ##    ",
            "     ######     ",
            "                ",
        },
        {  // 1
            "                ",
            "       ##       ",
            "      ###       ",
            "     ####       ",
            "    ## ##       ",
            "       ##       ",
            "       ##       ",
            "       ##       ",
            "       ##       ",
            "       ##       ",
            "       ##       ",
            "       ##       ",
            "       ##       ",
            "       ##       ",
            "    ########    ",
            "                ",
        },
        {  // 2
            "                ",
            "    ######      ",
            "   ##    ##     ",
            "  ##      ##    ",
            "          ##    ",
            "          ##    ",
            "         ##     ",
            "        ##      ",
            "       ##       ",
            "      ##        ",
            "     ##         ",
            "    ##          ",
            "   ##           ",
            "  ##            ",
            "  ###########   ",
            "                ",
        },
        {  // 3
            "                ",
            "   ########     ",
            "  ##      ##    ",
            "          ##    ",
            "          ##    ",
            "         ##     ",
            "     #####      ",
            "         ##     ",
            "          ##    ",
            "          ##    ",
            "          ##    ",
            "          ##    ",
            "  ##      ##    ",
            "   ##    ##     ",
            "    ######      ",
            "                ",
        },
        {  // 4
            "                ",
            "        ###     ",
            "       ####     ",
            "      ## ##     ",
            "     ##  ##     ",
            "    ##   ##     ",
            "   ##    ##     ",
            "  ##     ##     ",
            "  ############  ",
            "         ##     ",
            "         ##     ",
            "         ##     ",
            "         ##     ",
            "         ##     ",
            "         ##     ",
            "                ",
        },
        {  // 5
            "                ",
            "  ##########    ",
            "  ##            ",
            "  ##            ",
            "  ##            ",
            "  ##            ",
            "  ########      ",
            "         ##     ",
            "          ##    ",
            "          ##    ",
            "          ##    ",
            "          ##    ",
            "  ##      ##    ",
            "   ##    ##     ",
            "    ######      ",
            "                ",
        },
        {  // 6
            "                ",
            "      #####     ",
            "     ##         ",
            "    ##          ",
            "   ##           ",
            "  ##            ",
            "  ##            ",
            "  ## ######     ",
            "  ###     ##    ",
            "  ##       ##   ",
            "  ##       ##   ",
            "  ##       ##   ",
            "   ##      ##   ",
            "    ##    ##    ",
            "     ######     ",
            "                ",
        },
        {  // 7
            "                ",
            "  ############  ",
            "            ##  ",
            "           ##   ",
            "          ##    ",
            "          ##    ",
            "         ##     ",
            "         ##     ",
            "        ##      ",
            "        ##      ",
            "       ##       ",
            "       ##       ",
            "      ##        ",
            "      ##        ",
            "     ##         ",
            "                ",
        },
        {  // 8
            "                ",
            "    ######      ",
            "   ##    ##     ",
            "  ##      ##    ",
            "  ##      ##    ",
            "   ##    ##     ",
            "    ######      ",
            "   ##    ##     ",
            "  ##      ##    ",
            "  ##      ##    ",
            "  ##      ##    ",
            "  ##      ##    ",
            "   ##    ##     ",
            "    ######      ",
            "                ",
            "                ",
        },
        {  // 9
            "                ",
            "     ######     ",
            "    ##    ##    ",
            "   ##      ##   ",
            "   ##      ##   ",
            "   ##      ##   ",
            "    ##    ###   ",
            "     ###### ##  ",
            "            ##  ",
            "           ##   ",
            "           ##   ",
            "          ##    ",
            "         ##     ",
            "        ##      ",
            "      ##        ",
            "                ",
        },
    }};
    return t;
}

}  // namespace

std::vector<SemeionRecord> parse_semeion(std::istream& is) {
    std::vector<SemeionRecord> out;
    std::string line;
    std::int64_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream ls(line);
        std::vector<double> fields;
        double v;
        while (ls >> v) fields.push_back(v);
        if (static_cast<int>(fields.size()) != kFields)
            throw ArgumentError("line " + std::to_string(lineno) + ": expected " +
                                std::to_string(kFields) + " fields, got " +
                                std::to_string(fields.size()));
        std::vector<double> pixels(fields.begin(), fields.begin() + kPixels);
        for (std::size_t i = 0; i < pixels.size(); ++i) {
            if (pixels[i] != 0.0 && pixels[i] != 1.0)
                throw ArgumentError("line " + std::to_string(lineno) + ": pixel " +
                                    std::to_string(i + 1) + " is not 0/1");
        }
        int label = -1;
        for (int d = 0; d < 10; ++d) {
            const double flag = fields[static_cast<std::size_t>(kPixels + d)];
            if (flag == 1.0) {
                if (label >= 0)
                    throw ArgumentError("line " + std::to_string(lineno) + ": multiple label flags set");
                label = d;
            } else if (flag != 0.0) {
                throw ArgumentError("line " + std::to_string(lineno) + ": label flags must be 0/1");
            }
        }
        if (label < 0)
            throw ArgumentError("line " + std::to_string(lineno) + ": no label flag set");
        out.push_back({Tensor({kSide, kSide}, std::move(pixels)), label});
    }
    return out;
}

void write_semeion(std::ostream& os, std::span<const SemeionRecord> records) {
    for (const SemeionRecord& r : records) {
        for (std::int64_t i = 0; i < r.image.size(); ++i)
            os << static_cast<int>(r.image[i]) << ' ';
        for (int d = 0; d < 10; ++d) os << (d == r.label ? 1 : 0) << (d + 1 < 10 ? " " : "");
        os << '\n';
    }
}

std::vector<SemeionRecord> synthetic_semeion(std::uint64_t seed) {
    std::vector<SemeionRecord> out;
    out.reserve(1593);
    for (int digit = 0; digit < 10; ++digit) {
        const auto& tmpl = templates()[static_cast<std::size_t>(digit)];
        for (int i = 0; i < kClassCounts[static_cast<std::size_t>(digit)]; ++i) {
            Rng rng = Rng::substream(seed, {static_cast<std::uint64_t>(digit),
                                            static_cast<std::uint64_t>(i)});
            auto small_shift = [&] {
                const double u = rng.uniform01();
                return u < 0.2 ? -1 : u < 0.8 ? 0 : 1;
            };
            const int dx = small_shift();
            const int dy = small_shift();
            const bool thick = rng.uniform01() < 0.3;
            Tensor img({kSide, kSide});
            for (int row = 0; row < kSide; ++row) {
                for (int col = 0; col < kSide; ++col) {
                    const int sr = row - dy;
                    const int sc = col - dx;
                    bool ink = sr >= 0 && sr < kSide && sc >= 0 && sc < kSide &&
                               tmpl[static_cast<std::size_t>(sr)][sc] == '#';
                    if (!ink && thick && sr >= 0 && sr < kSide && sc - 1 >= 0 && sc - 1 < kSide)
                        ink = tmpl[static_cast<std::size_t>(sr)][sc - 1] == '#';
                    if (ink && rng.uniform01() < 0.10) ink = false;  // stroke dropout
                    if (rng.uniform01() < 0.02) ink = !ink;
                    img[col + kSide * row] = ink ? 1.0 : 0.0;  // file scan order: row-major
                }
            }
            out.push_back({std::move(img), digit});
        }
    }
    return out;
}

Sample semeion_sample(std::span<const SemeionRecord> records, std::span<const int> digits) {
    std::vector<Tensor> keep;
    for (const SemeionRecord& r : records)
        if (digits.empty() || std::find(digits.begin(), digits.end(), r.label) != digits.end())
            keep.push_back(r.image);
    if (keep.empty()) throw ArgumentError("no records match the digit filter");
    return Sample::from_tensors(keep);
}

std::vector<int> semeion_labels(std::span<const SemeionRecord> records, std::span<const int> digits) {
    std::vector<int> out;
    for (const SemeionRecord& r : records)
        if (digits.empty() || std::find(digits.begin(), digits.end(), r.label) != digits.end())
            out.push_back(r.label);
    return out;
}

}  // namespace tjade
