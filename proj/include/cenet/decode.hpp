#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "cenet/geometry.hpp"
#include "cenet/tensor.hpp"

namespace cenet {

// Dense model outputs at 1/stride of the input image. conf holds scores in
// [0,1]; the four offset maps are map-space distances from a cell to its
// box's top-left/bottom-right corners; emb is the D-channel embedding map.
struct PredictionMaps {
    Grid conf;
    std::array<Grid, 4> offsets;  // dx_tl, dy_tl, dx_br, dy_br
    Volume emb;
    int stride = 4;

    void validate() const;  // throws ShapeMismatch
};

struct CharCandidate {
    double score = 0.0;
    double cx = 0.0, cy = 0.0;  // image pixels
    double w = 0.0, h = 0.0;    // image pixels
    std::vector<double> emb;    // empty until extracted
    bool emb_clamped = false;   // center fell outside the map and was clamped

    BoxAA box() const { return BoxAA::from_center(cx, cy, w, h); }
};

// One candidate per map cell with conf > s; corners reconstructed from the
// offset maps in map space, then scaled into image space. Candidates with
// non-positive extent are dropped. Row-major cell order.
std::vector<CharCandidate> decode_candidates(const PredictionMaps& maps, double s);

// Greedy score-descending NMS; suppresses iou > t_nms against any kept box.
// Total order for ties: (score desc, cx, cy, input index).
std::vector<CharCandidate> nms(std::vector<CharCandidate> cands, double t_nms);

// Bilinear footprint of a map-space sample point: up to 4 (cell, weight)
// taps. Out-of-range points clamp to the border; `clamped` reports it.
struct BilinearTaps {
    std::array<int, 4> cell_x{};
    std::array<int, 4> cell_y{};
    std::array<double, 4> weight{};
    int count = 0;
    bool clamped = false;
};

BilinearTaps bilinear_taps(int map_h, int map_w, double mx, double my);

// Fill each candidate's embedding with a bilinear sample of the embedding
// map at its center (center / stride). Geometry fields are untouched.
void extract_embeddings(const PredictionMaps& maps, std::vector<CharCandidate>& cands);

// JSON-lines serialization: {"score":..,"cx":..,"cy":..,"w":..,"h":..,"emb":[..]}.
void write_candidates_jsonl(std::ostream& os, const std::vector<CharCandidate>& cands);
std::vector<CharCandidate> read_candidates_jsonl(std::istream& is);

}  // namespace cenet
