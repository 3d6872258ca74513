#pragma once

namespace fea {

// Wrap an index onto [0, n); handles the -1 underflow from anticlockwise moves.
inline int wrap_cell(int psi, int n) {
    int r = psi % n;
    return r < 0 ? r + n : r;
}

// Shortest distance between two cells on a ring of n cells.
inline int circular_distance(int n, int a, int b) {
    int d = a > b ? a - b : b - a;
    return d <= n - d ? d : n - d;
}

} // namespace fea
