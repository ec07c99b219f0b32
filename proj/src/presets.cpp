#include "pcm/presets.hpp"

#include <stdexcept>

namespace pcm {

namespace {

std::vector<double> snr_range(double from, double step, double to) {
    std::vector<double> v;
    for (double s = from; s <= to + 1e-9; s += step) v.push_back(s);
    return v;
}

}  // namespace

SchemeConfig FigurePreset::scheme_for(const PresetEntry& e) const {
    return make_scheme(e.kind, m, n_uses, e.split, e.kernel);
}

// Design SNRs sit at the midpoint of each scheme's observed waterfall; the
// sweep grids bracket the BLER = 1e-2 crossing. Both are toolkit choices and
// are echoed in output metadata.
FigurePreset figure_preset(const std::string& name) {
    FigurePreset p;
    p.name = name;
    if (name == "64qam") {
        p.m = 3;
        p.n_uses = 512;
        p.k_total = 768;
        p.construction_trials = 100000;
        p.stop = {100, 20000};
        p.seed = 64001;
        p.entries = {
            {SchemeKind::mlpcm, 0, {}, 11.0, snr_range(10.0, 0.25, 12.0)},
            {SchemeKind::hybrid_pcm, 1, {}, 11.3, snr_range(10.25, 0.25, 12.25)},
            {SchemeKind::compound_bicm, 0, Kernel::k3(), 11.8, snr_range(10.75, 0.25, 12.75)},
        };
        return p;
    }
    if (name == "256qam") {
        p.m = 4;
        p.n_uses = 512;
        p.k_total = 1024;
        p.construction_trials = 100000;
        p.stop = {100, 20000};
        p.seed = 256001;
        p.entries = {
            {SchemeKind::mlpcm, 0, {}, 17.0, snr_range(16.0, 0.25, 18.0)},
            {SchemeKind::hybrid_pcm, 2, {}, 17.3, snr_range(16.25, 0.25, 18.25)},
            {SchemeKind::compound_bicm, 0, Kernel::k4(), 17.9, snr_range(16.75, 0.25, 18.75)},
            {SchemeKind::plain_bicm, 0, {}, 19.0, snr_range(18.0, 0.25, 20.5)},
        };
        return p;
    }
    throw std::invalid_argument("unknown figure preset: " + name);
}

}  // namespace pcm
