// Canned experiment setups: the 64-QAM and 256-QAM scheme comparisons.

#pragma once

#include <string>
#include <vector>

#include "pcm/schemes.hpp"
#include "pcm/sim.hpp"

namespace pcm {

struct PresetEntry {
    SchemeKind kind = SchemeKind::mlpcm;
    int split = 0;
    Kernel kernel;
    double design_snr_db = 0.0;
    std::vector<double> snrs_db;
};

struct FigurePreset {
    std::string name;
    int m = 0;
    int n_uses = 0;
    int k_total = 0;
    long construction_trials = 100000;
    StopRule stop{100, 20000};
    uint64_t seed = 1;
    std::vector<PresetEntry> entries;

    SchemeConfig scheme_for(const PresetEntry& e) const;
};

/// name is "64qam" or "256qam"; throws on anything else.
FigurePreset figure_preset(const std::string& name);

}  // namespace pcm
