#include "rentwist/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace rentwist {

std::vector<OpeEntry> ope_table() {
    const double hphi = -0.2;
    const cdouble I(0.0, 1.0);
    const cdouble cphi = I * std::sqrt(0.5 * (3 * std::sqrt(5.0) - 5)) * std::pow(gamma(0.2), 3) / (10 * M_PI * gamma(0.6));
    const double mag = (std::sqrt(5.0) - 1) * std::pow(gamma(0.2), 6) * std::pow(gamma(0.4), 2) /
                       (80 * std::pow(2.0, 0.4) * std::pow(M_PI, 4));
    return {
        {"C(phi,phi,phi)", cphi, "closed_form"},
        {"C(Phi,Phi,Phi)", cphi * cphi, "closed_form"},
        {"C(Phi,tau_1,tau_1)", std::pow(2.0, -8 * hphi), "closed_form"},
        {"C((1xphi)0,tau_phi,tau_phi)", std::sqrt(2.0) * cphi / std::pow(2.0, 2 * hphi), "closed_form"},
        // The closed-form expression fixes the magnitude; the sign follows the tabulated value -5.53709.
        {"C(Phi,tau_phi,tau_phi)", -mag, "closed_form_magnitude_tabulated_sign"},
        {"C(tau_phi,Phi,tau_1)", cphi / std::pow(2.0, 6 * hphi), "closed_form"},
        {"C(tau_phi,Phi,LLbar_tau_phi)", std::pow(2.0, 4 * hphi + 2) / 5, "closed_form"},
    };
}

const OpeEntry& ope_lookup(const std::string& name) {
    static const auto table = ope_table();
    for (const auto& e : table)
        if (e.name == name) return e;
    throw std::out_of_range("unknown OPE coefficient '" + name + "'");
}

std::string ope_csv() {
    std::ostringstream out;
    out << "name,re,im,provenance\n";
    char buf[64];
    for (const auto& e : ope_table()) {
        out << '"' << e.name << '"';
        std::snprintf(buf, sizeof buf, ",%.17g,%.17g,", e.value.real(), e.value.imag());
        out << buf << e.provenance << "\n";
    }
    return out.str();
}

}  // namespace rentwist
