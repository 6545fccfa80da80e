#pragma once

// Brute-force Jaro-Winkler oracle, written directly from the definition and
// kept independent of the library implementation: a full boolean match
// matrix is materialized, matches are paired in explicit passes, and the
// transposition count is taken from the paired character lists.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace oracle {

inline double jaro_bruteforce(const std::string& a, const std::string& b) {
    const std::size_t la = a.size(), lb = b.size();
    if (la == 0 && lb == 0) return 1.0;
    if (la == 0 || lb == 0) return 0.0;

    const std::size_t longest = std::max(la, lb);
    const long window = longest / 2 >= 1 ? static_cast<long>(longest / 2 - 1) : 0;

    // Full match matrix: inWindow[i][j] is true when a[i] could match b[j].
    std::vector<std::vector<bool>> inWindow(la, std::vector<bool>(lb, false));
    for (std::size_t i = 0; i < la; ++i)
        for (std::size_t j = 0; j < lb; ++j)
            if (a[i] == b[j] &&
                std::labs(static_cast<long>(i) - static_cast<long>(j)) <= window)
                inWindow[i][j] = true;

    // Pair each a[i] with the first unused b[j] in its window, left to right.
    std::vector<bool> usedB(lb, false);
    std::vector<char> matchedA, matchedB;
    std::vector<std::size_t> pairedB;
    for (std::size_t i = 0; i < la; ++i) {
        for (std::size_t j = 0; j < lb; ++j) {
            if (inWindow[i][j] && !usedB[j]) {
                usedB[j] = true;
                matchedA.push_back(a[i]);
                pairedB.push_back(j);
                break;
            }
        }
    }
    if (matchedA.empty()) return 0.0;

    std::sort(pairedB.begin(), pairedB.end());
    for (std::size_t j : pairedB) matchedB.push_back(b[j]);

    std::size_t halfTranspositions = 0;
    for (std::size_t k = 0; k < matchedA.size(); ++k)
        if (matchedA[k] != matchedB[k]) ++halfTranspositions;

    const double m = static_cast<double>(matchedA.size());
    const double t = static_cast<double>(halfTranspositions) / 2.0;
    return (m / la + m / lb + (m - t) / m) / 3.0;
}

inline double jaro_winkler_bruteforce(const std::string& a, const std::string& b,
                                      double p = 0.1, int lmax = 4) {
    const double jaro = jaro_bruteforce(a, b);
    int prefix = 0;
    while (prefix < lmax && static_cast<std::size_t>(prefix) < a.size() &&
           static_cast<std::size_t>(prefix) < b.size() &&
           a[prefix] == b[prefix])
        ++prefix;
    return jaro + prefix * p * (1.0 - jaro);
}

} // namespace oracle
