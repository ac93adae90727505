#ifndef SATGAME_FAMILY_HPP
#define SATGAME_FAMILY_HPP

#include <algorithm>
#include <optional>
#include <string>

#include "satgame/errors.hpp"

namespace satgame {

enum class FamilyKind { OddUpTo, Single, AllOdd, AllOddExcept3 };

/// A forbidden family of odd cycle lengths. OddUpTo(k) forbids C_3..C_{2k+1},
/// Single(m) forbids C_m alone, AllOdd forbids every odd cycle, and
/// AllOddExcept3 forbids every odd cycle except the triangle.
struct ForbiddenFamily {
    FamilyKind kind;
    int param = 0;  // OddUpTo: k; Single: m (odd, >= 3)

    static ForbiddenFamily odd_up_to(int k) {
        if (k < 1) throw PreconditionError("OddUpTo requires k >= 1");
        return {FamilyKind::OddUpTo, k};
    }
    static ForbiddenFamily single(int m) {
        if (m < 3 || m % 2 == 0) throw PreconditionError("Single requires odd m >= 3");
        return {FamilyKind::Single, m};
    }
    static ForbiddenFamily all_odd() { return {FamilyKind::AllOdd, 0}; }
    static ForbiddenFamily all_odd_except_3() { return {FamilyKind::AllOddExcept3, 0}; }

    bool is_forbidden(int len) const {
        if (len < 3 || len % 2 == 0) return false;
        switch (kind) {
            case FamilyKind::OddUpTo: return len <= 2 * param + 1;
            case FamilyKind::Single: return len == param;
            case FamilyKind::AllOdd: return true;
            case FamilyKind::AllOddExcept3: return len >= 5;
        }
        return false;
    }

    bool cofinite() const { return kind == FamilyKind::AllOdd || kind == FamilyKind::AllOddExcept3; }

    /// Largest forbidden cycle length that can occur on n vertices, or 0 if none.
    int max_relevant_length(int n) const {
        int largest_odd = n % 2 == 0 ? n - 1 : n;
        int cap;
        switch (kind) {
            case FamilyKind::OddUpTo: cap = std::min(2 * param + 1, largest_odd); break;
            case FamilyKind::Single: cap = param <= n ? param : 0; break;
            default: cap = largest_odd;
        }
        if (kind == FamilyKind::AllOddExcept3 && cap == 3) cap = 0;
        return cap >= 3 ? cap : 0;
    }

    std::string to_string() const {
        switch (kind) {
            case FamilyKind::OddUpTo: return "odd<=" + std::to_string(2 * param + 1);
            case FamilyKind::Single: return "single=" + std::to_string(param);
            case FamilyKind::AllOdd: return "allodd";
            case FamilyKind::AllOddExcept3: return "allodd-except-3";
        }
        return "?";
    }

    static std::optional<ForbiddenFamily> parse(const std::string& text) {
        if (text == "allodd") return all_odd();
        if (text == "allodd-except-3") return all_odd_except_3();
        auto tail_int = [](const std::string& s, const std::string& prefix) -> std::optional<int> {
            if (s.rfind(prefix, 0) != 0) return std::nullopt;
            const std::string digits = s.substr(prefix.size());
            if (digits.empty()) return std::nullopt;
            int value = 0;
            for (char c : digits) {
                if (c < '0' || c > '9') return std::nullopt;
                value = value * 10 + (c - '0');
                if (value > 1000000) return std::nullopt;
            }
            return value;
        };
        if (auto m = tail_int(text, "odd<=")) {
            if (*m >= 3 && *m % 2 == 1) return odd_up_to((*m - 1) / 2);
            return std::nullopt;
        }
        if (auto m = tail_int(text, "single=")) {
            if (*m >= 3 && *m % 2 == 1) return single(*m);
            return std::nullopt;
        }
        return std::nullopt;
    }

    bool operator==(const ForbiddenFamily&) const = default;
};

}  // namespace satgame

#endif
