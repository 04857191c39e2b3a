#include "regsing/gaussian.hpp"

namespace regsing {

std::string to_string(const BigRat& r) {
    return r.str();
}

std::string to_string(const GaussianRational& g) {
    if (g.is_zero()) return "0";
    std::string s;
    if (g.re != 0) s += to_string(g.re);
    if (g.im != 0) {
        std::string im;
        if (g.im == 1) im = "i";
        else if (g.im == -1) im = "-i";
        else im = to_string(g.im) + "*i";
        if (!s.empty() && im[0] != '-') s += "+";
        s += im;
    }
    return s;
}

}  // namespace regsing
