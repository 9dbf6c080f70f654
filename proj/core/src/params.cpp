#include "tmis/params.hpp"

#include <sstream>

#include "tmis/errors.hpp"

namespace tmis {

namespace {

std::string_view trim_ws(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

std::string CurveParams::to_text() const {
    std::ostringstream out;
    out << "label = " << security_label << "\n";
    out << "p = " << p.to_dec() << "\n";
    out << "q = " << q.to_dec() << "\n";
    out << "cofactor = " << cofactor.to_dec() << "\n";
    out << "gx = " << gx.to_dec() << "\n";
    out << "gy = " << gy.to_dec() << "\n";
    return out.str();
}

CurveParams CurveParams::from_text(std::string_view text) {
    CurveParams out;
    bool have_p = false, have_q = false, have_c = false, have_gx = false, have_gy = false;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        line = trim_ws(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw DecodeError("params config line missing '='");
        }
        std::string_view key = trim_ws(line.substr(0, eq));
        std::string_view value = trim_ws(line.substr(eq + 1));
        if (key == "label") {
            out.security_label = std::string(value);
        } else if (key == "p") {
            out.p = BigUint::from_dec(value);
            have_p = true;
        } else if (key == "q") {
            out.q = BigUint::from_dec(value);
            have_q = true;
        } else if (key == "cofactor") {
            out.cofactor = BigUint::from_dec(value);
            have_c = true;
        } else if (key == "gx") {
            out.gx = BigUint::from_dec(value);
            have_gx = true;
        } else if (key == "gy") {
            out.gy = BigUint::from_dec(value);
            have_gy = true;
        } else {
            throw DecodeError("unknown params config key: " + std::string(key));
        }
    }
    if (!(have_p && have_q && have_c && have_gx && have_gy)) {
        throw DecodeError("params config missing required keys");
    }
    return out;
}

const CurveParams& CurveParams::test_set() {
    static const CurveParams params = [] {
        CurveParams out;
        out.p = BigUint(43);
        out.q = BigUint(11);
        out.cofactor = BigUint(4);
        out.gx = BigUint(31);
        out.gy = BigUint(18);
        out.security_label = "test";
        return out;
    }();
    return params;
}

const CurveParams& CurveParams::desk_set() {
    // Found by scripts/find_desk_params.py: q is the smallest 160-bit prime
    // >= 2^159 + 1 whose companion p = q * 2^96 - 1 is also prime. Then
    // p = 3 (mod 4) automatically, cofactor = 2^96, and the generator is the
    // cofactor-cleared first curve point by ascending x.
    static const CurveParams params = [] {
        CurveParams out;
        out.p = BigUint::from_dec(
            "5789604461865809771178549250434395392663499252368092551659158126680394117"
            "9391");
        out.q = BigUint::from_dec("730750818665451459101842416358141509827966273897");
        out.cofactor = BigUint(1) << 96;
        out.gx = BigUint::from_dec(
            "1764502684295237256048535614749989671566700261294524244787726001349197047"
            "9088");
        out.gy = BigUint::from_dec(
            "8510849890427579706621051371108648385247966473182008240712041271904549236"
            "951");
        out.security_label = "desk";
        return out;
    }();
    return params;
}

const CurveParams& CurveParams::by_label(std::string_view label) {
    if (label == "test") {
        return test_set();
    }
    if (label == "desk") {
        return desk_set();
    }
    throw ConfigError("unknown parameter set label: " + std::string(label));
}

bool same_params(const CurveParams& a, const CurveParams& b) {
    if (&a == &b) {
        return true;
    }
    return a.p == b.p && a.q == b.q && a.cofactor == b.cofactor && a.gx == b.gx &&
           a.gy == b.gy;
}

}  // namespace tmis
