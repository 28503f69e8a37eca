#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace pants {

/// Index of the lexicographically least rotation of `s` (Booth's algorithm).
/// For periodic sequences the smallest such index is returned.
template <class T>
std::size_t least_rotation(std::span<const T> s) {
    const std::size_t n = s.size();
    if (n < 2)
        return 0;
    // failure function over the doubled sequence
    std::vector<std::ptrdiff_t> f(2 * n, -1);
    std::size_t k = 0;
    for (std::size_t j = 1; j < 2 * n; ++j) {
        const T& sj = s[j % n];
        std::ptrdiff_t i = f[j - k - 1];
        while (i != -1 && !(sj == s[(k + i + 1) % n])) {
            if (sj < s[(k + i + 1) % n])
                k = j - i - 1;
            i = f[i];
        }
        if (i == -1 && !(sj == s[(k + i + 1) % n])) {
            if (sj < s[(k + i + 1) % n])
                k = j;
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    return k % n;
}

template <class T>
std::vector<T> rotate_left(std::span<const T> s, std::size_t k) {
    std::vector<T> out(s.begin(), s.end());
    if (!out.empty())
        std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k % out.size()),
                    out.end());
    return out;
}

template <class T>
std::vector<T> canonical_rotation(std::span<const T> s) {
    return rotate_left(s, least_rotation(s));
}

/// Smallest p dividing |s| with s[i] == s[(i + p) % |s|] for all i.
template <class T>
std::size_t cyclic_period(std::span<const T> s) {
    const std::size_t n = s.size();
    if (n == 0)
        return 0;
    // prefix function; a linear sequence whose border leaves period p | n
    // is the p-th power of its prefix, and then so is every rotation
    std::vector<std::size_t> pi(n, 0);
    for (std::size_t i = 1; i < n; ++i) {
        std::size_t k = pi[i - 1];
        while (k > 0 && !(s[i] == s[k]))
            k = pi[k - 1];
        if (s[i] == s[k])
            ++k;
        pi[i] = k;
    }
    const std::size_t p = n - pi[n - 1];
    return n % p == 0 ? p : n;
}

} // namespace pants
