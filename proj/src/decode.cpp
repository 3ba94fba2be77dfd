#include "cenet/decode.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "nlohmann/json.hpp"

namespace cenet {

void PredictionMaps::validate() const {
    for (const Grid& g : offsets)
        if (!g.same_shape(conf)) throw ShapeMismatch("offset map shape differs from conf map");
    if (emb.h != conf.h || emb.w != conf.w)
        throw ShapeMismatch("embedding map shape differs from conf map");
    if (stride < 1) throw ShapeMismatch("stride must be >= 1");
    if (emb.c < 1) throw ShapeMismatch("embedding dimension must be >= 1");
}

std::vector<CharCandidate> decode_candidates(const PredictionMaps& maps, double s) {
    maps.validate();
    std::vector<CharCandidate> out;
    const double k = static_cast<double>(maps.stride);
    for (int y = 0; y < maps.conf.h; ++y) {
        for (int x = 0; x < maps.conf.w; ++x) {
            const double conf = maps.conf.at(y, x);
            if (!(conf > s)) continue;
            const double x_tl = (x - maps.offsets[0].at(y, x)) * k;
            const double y_tl = (y - maps.offsets[1].at(y, x)) * k;
            const double x_br = (x + maps.offsets[2].at(y, x)) * k;
            const double y_br = (y + maps.offsets[3].at(y, x)) * k;
            const double w = x_br - x_tl;
            const double h = y_br - y_tl;
            if (w <= 0.0 || h <= 0.0) continue;
            CharCandidate c;
            c.score = conf;
            c.cx = (x_tl + x_br) / 2;
            c.cy = (y_tl + y_br) / 2;
            c.w = w;
            c.h = h;
            out.push_back(std::move(c));
        }
    }
    return out;
}

std::vector<CharCandidate> nms(std::vector<CharCandidate> cands, double t_nms) {
    std::vector<std::size_t> order(cands.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const CharCandidate& ca = cands[a];
        const CharCandidate& cb = cands[b];
        if (ca.score != cb.score) return ca.score > cb.score;
        if (ca.cx != cb.cx) return ca.cx < cb.cx;
        if (ca.cy != cb.cy) return ca.cy < cb.cy;
        return a < b;
    });
    std::vector<CharCandidate> kept;
    std::vector<BoxAA> kept_boxes;
    for (std::size_t idx : order) {
        const BoxAA b = cands[idx].box();
        bool suppressed = false;
        for (const BoxAA& kb : kept_boxes) {
            if (iou(b, kb) > t_nms) {
                suppressed = true;
                break;
            }
        }
        if (!suppressed) {
            kept.push_back(std::move(cands[idx]));
            kept_boxes.push_back(b);
        }
    }
    return kept;
}

BilinearTaps bilinear_taps(int map_h, int map_w, double mx, double my) {
    BilinearTaps taps;
    double x = mx, y = my;
    if (x < 0.0 || y < 0.0 || x > map_w - 1.0 || y > map_h - 1.0) {
        taps.clamped = true;
        x = std::clamp(x, 0.0, static_cast<double>(map_w - 1));
        y = std::clamp(y, 0.0, static_cast<double>(map_h - 1));
    }
    const int x0 = std::min(static_cast<int>(std::floor(x)), map_w - 1);
    const int y0 = std::min(static_cast<int>(std::floor(y)), map_h - 1);
    const int x1 = std::min(x0 + 1, map_w - 1);
    const int y1 = std::min(y0 + 1, map_h - 1);
    const double fx = x - x0;
    const double fy = y - y0;
    const double ws[4] = {(1 - fx) * (1 - fy), fx * (1 - fy), (1 - fx) * fy, fx * fy};
    const int xs[4] = {x0, x1, x0, x1};
    const int ys[4] = {y0, y0, y1, y1};
    for (int i = 0; i < 4; ++i) {
        if (ws[i] == 0.0) continue;
        taps.cell_x[taps.count] = xs[i];
        taps.cell_y[taps.count] = ys[i];
        taps.weight[taps.count] = ws[i];
        ++taps.count;
    }
    return taps;
}

void extract_embeddings(const PredictionMaps& maps, std::vector<CharCandidate>& cands) {
    const double k = static_cast<double>(maps.stride);
    for (CharCandidate& c : cands) {
        const BilinearTaps taps = bilinear_taps(maps.emb.h, maps.emb.w, c.cx / k, c.cy / k);
        c.emb.assign(maps.emb.c, 0.0);
        c.emb_clamped = taps.clamped;
        for (int t = 0; t < taps.count; ++t) {
            const double w = taps.weight[t];
            for (int d = 0; d < maps.emb.c; ++d)
                c.emb[d] += w * maps.emb.at(d, taps.cell_y[t], taps.cell_x[t]);
        }
    }
}

void write_candidates_jsonl(std::ostream& os, const std::vector<CharCandidate>& cands) {
    for (const CharCandidate& c : cands) {
        nlohmann::json j{{"score", c.score}, {"cx", c.cx}, {"cy", c.cy}, {"w", c.w}, {"h", c.h},
                         {"emb", c.emb}};
        os << j.dump() << '\n';
    }
}

std::vector<CharCandidate> read_candidates_jsonl(std::istream& is) {
    std::vector<CharCandidate> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const nlohmann::json j = nlohmann::json::parse(line);
        CharCandidate c;
        c.score = j.at("score").get<double>();
        c.cx = j.at("cx").get<double>();
        c.cy = j.at("cy").get<double>();
        c.w = j.at("w").get<double>();
        c.h = j.at("h").get<double>();
        c.emb = j.at("emb").get<std::vector<double>>();
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace cenet
