#include "cclab/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace cclab {

ChannelInstance ChannelInstance::baseband(double p1, double p2, Complex h12, Complex h21, double sigma1_sq,
                                          double sigma2_sq) {
    ChannelInstance inst;
    inst.p1 = p1;
    inst.p2 = p2;
    inst.h12 = h12;
    inst.h21 = h21;
    inst.sigma1_sq = sigma1_sq;
    inst.sigma2_sq = sigma2_sq;
    inst.validate();
    return inst;
}

ChannelInstance ChannelInstance::with_bandwidth(double p1, double p2, Complex h12, Complex h21, double w) {
    ChannelInstance inst;
    inst.p1 = p1;
    inst.p2 = p2;
    inst.h12 = h12;
    inst.h21 = h21;
    inst.sigma1_sq = w;
    inst.sigma2_sq = w;
    inst.bandwidth_w = w;
    inst.validate();
    return inst;
}

void ChannelInstance::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(std::string("ChannelInstance: ") + name + " must be positive and finite");
        }
    };
    positive(p1, "p1");
    positive(p2, "p2");
    positive(sigma1_sq, "sigma1_sq");
    positive(sigma2_sq, "sigma2_sq");
    if (bandwidth_w) positive(*bandwidth_w, "bandwidth_w");
    for (const Complex g : {h12, h21}) {
        if (!std::isfinite(g.real()) || !std::isfinite(g.imag())) {
            throw std::invalid_argument("ChannelInstance: cross gains must be finite");
        }
    }
    for (const double r : {snr1(), snr2(), inr1(), inr2()}) {
        if (!std::isfinite(r) || r < 0.0) {
            throw std::invalid_argument("ChannelInstance: derived SNR/INR ratios must be finite and nonnegative");
        }
    }
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::Weak: return "Weak";
        case Regime::Strong: return "Strong";
        case Regime::VeryStrong: return "VeryStrong";
    }
    return "?";
}

RegimeReport classify_regime(const ChannelInstance& instance) {
    instance.validate();
    RegimeReport rep{Regime::Weak, instance.snr1(), instance.snr2(), instance.inr1(), instance.inr2()};
    if (rep.snr1 > rep.inr2 || rep.snr2 > rep.inr1) {
        rep.regime = Regime::Weak;
    } else if (rep.snr1 > rep.inr2 / (1.0 + rep.snr2) || rep.snr2 > rep.inr1 / (1.0 + rep.snr1)) {
        rep.regime = Regime::Strong;
    } else {
        rep.regime = Regime::VeryStrong;
    }
    return rep;
}

}  // namespace cclab
