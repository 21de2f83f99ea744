#ifndef GENTREE_LABELS_HPP
#define GENTREE_LABELS_HPP

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "gentree/errors.hpp"

namespace gentree {

// A label in the colored succession rule. color distinguishes repeated child
// values, numbered 1..mult in ascending appended-site order; an unrepeated
// child has color 1.
struct ColoredLabel {
    int value = 0;
    int color = 1;
    bool operator==(const ColoredLabel& o) const { return value == o.value && color == o.color; }
    bool operator!=(const ColoredLabel& o) const { return !(*this == o); }
};

// A path in the generating tree, written as its labels from the root.
struct ColoredLabelSeq {
    std::vector<ColoredLabel> labels;

    bool operator==(const ColoredLabelSeq& o) const { return labels == o.labels; }
    std::size_t size() const { return labels.size(); }

    std::string str() const {
        std::ostringstream os;
        os << '(';
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (i) os << ',';
            os << labels[i].value;
            if (labels[i].color == 2) os << 'T';
            else if (labels[i].color > 2) os << '^' << labels[i].color;
        }
        os << ')';
        return os.str();
    }
};

struct ColoredLabelSeqHash {
    std::size_t operator()(const ColoredLabelSeq& s) const {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (const auto& l : s.labels) {
            h = (h ^ static_cast<std::size_t>(l.value * 37 + l.color)) * 0x100000001b3ULL;
        }
        return h;
    }
};

// One colored increment y <= 1; the jump inherits the color of the label it
// leads to.
struct ColoredJump {
    int y = 0;
    int color = 1;
    bool operator==(const ColoredJump& o) const { return y == o.y && color == o.color; }
    bool operator!=(const ColoredJump& o) const { return !(*this == o); }
    bool operator<(const ColoredJump& o) const {
        return y != o.y ? y < o.y : color < o.color;
    }
};

struct ColoredJumpSeq {
    std::vector<ColoredJump> jumps;

    bool operator==(const ColoredJumpSeq& o) const { return jumps == o.jumps; }
    std::size_t size() const { return jumps.size(); }

    // Grammar: comma-separated integers with optional B|T color suffix,
    // e.g. "-2,+1B,+1B,+1T,+1T,-7". No suffix means color 1.
    static ColoredJumpSeq parse(const std::string& s) {
        ColoredJumpSeq out;
        std::istringstream is(s);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
            while (!tok.empty() && tok.back() == ' ') tok.pop_back();
            if (tok.empty()) throw DomainError("jumps: empty token");
            int color = 1;
            char last = tok.back();
            if (last == 'B' || last == 'b') { color = 1; tok.pop_back(); }
            else if (last == 'T' || last == 't') { color = 2; tok.pop_back(); }
            std::size_t pos = 0;
            int y = 0;
            try {
                y = std::stoi(tok, &pos);
            } catch (const std::exception&) {
                throw DomainError("jumps: bad token '" + tok + "'");
            }
            if (pos != tok.size()) throw DomainError("jumps: bad token '" + tok + "'");
            out.jumps.push_back({y, color});
        }
        if (out.jumps.empty()) throw DomainError("jumps: empty sequence");
        return out;
    }

    std::string str() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < jumps.size(); ++i) {
            if (i) os << ',';
            if (jumps[i].y > 0) os << '+';
            os << jumps[i].y;
            if (jumps[i].color == 2) os << 'T';
        }
        return os.str();
    }
};

struct ColoredJumpSeqHash {
    std::size_t operator()(const ColoredJumpSeq& s) const {
        std::size_t h = 0x84222325cbf29ce4ULL;
        for (const auto& j : s.jumps)
            h = (h ^ static_cast<std::size_t>((j.y + 4096) * 5 + j.color)) * 0x100000001b3ULL;
        return h;
    }
};

// Colored jumps of a label sequence: y_i = k_{i+1} - k_i with k_{i+1}'s color.
inline ColoredJumpSeq jumps_of(const ColoredLabelSeq& s) {
    ColoredJumpSeq out;
    if (s.labels.size() < 2) return out;
    out.jumps.reserve(s.labels.size() - 1);
    for (std::size_t i = 0; i + 1 < s.labels.size(); ++i)
        out.jumps.push_back({s.labels[i + 1].value - s.labels[i].value, s.labels[i + 1].color});
    return out;
}

// Prefix-sum inverse of jumps_of given the first label.
inline ColoredLabelSeq labels_from_jumps(ColoredLabel first, const ColoredJumpSeq& js) {
    ColoredLabelSeq out;
    out.labels.push_back(first);
    int cur = first.value;
    for (const auto& j : js.jumps) {
        cur += j.y;
        out.labels.push_back({cur, j.color});
    }
    return out;
}

} // namespace gentree

#endif
