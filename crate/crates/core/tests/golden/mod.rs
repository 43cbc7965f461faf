#![allow(clippy::excessive_precision)]

//! Frozen threshold tables from the brute-force oracle in
//! `tests/golden_oracle.rs` (dense scan, then bisection to 1e-12, integrator
//! tolerance 1e-11).

#![allow(dead_code)]

/// `A_N[n - 1]` is the initial value where the maxima count steps from `n` to `n + 1`.
pub const A_N: [f64; 40] = [
    1.60257293198117989e0, // n = 1
    2.38835814310470607e0, // n = 2
    2.97668245699861966e0, // n = 3
    3.46754150684690066e0, // n = 4
    3.89748397409496938e0, // n = 5
    4.28472413351899029e0, // n = 6
    4.63989208269445363e0, // n = 7
    4.96983001143345682e0, // n = 8
    5.27924814369855611e0, // n = 9
    5.57155243137991185e0, // n = 10
    5.84930006189504681e0, // n = 11
    6.11446887371176828e0, // n = 12
    6.36862591305608028e0, // n = 13
    6.61303775497944990e0, // n = 14
    6.84874543510517242e0, // n = 15
    7.07661694793542750e0, // n = 16
    7.29738501034909959e0, // n = 17
    7.51167484928807383e0, // n = 18
    7.72002505646040582e0, // n = 19
    7.92290351349068800e0, // n = 20
    8.12071974079078274e0, // n = 21
    8.31383460518764394e0, // n = 22
    8.50256804551230871e0, // n = 23
    8.68720528932428238e0, // n = 24
    8.86800190600613192e0, // n = 25
    9.04518795180367263e0, // n = 26
    9.21897139861760451e0, // n = 27
    9.38954099222970839e0, // n = 28
    9.55706865185639387e0, // n = 29
    9.72171149791730471e0, // n = 30
    9.88361357607273661e0, // n = 31
    1.00429073313423451e1, // n = 32
    1.01997148752077500e1, // n = 33
    1.03541490801568088e1, // n = 34
    1.05063145295432783e1, // n = 35
    1.06563083454775622e1, // n = 36
    1.08042209133529141e1, // n = 37
    1.09501365183605799e1, // n = 38
    1.10941339067122868e1, // n = 39
    1.12362867821785635e1, // n = 40
];

/// `B_N[n]` is the diagonal crossing of the separatrix above band `n`.
pub const B_N: [f64; 21] = [
    1.11771402383333651e0, // n = 0
    1.78766489679373120e0, // n = 1
    2.27395768447024826e0, // n = 2
    2.67495108202225618e0, // n = 3
    3.02396388828722174e0, // n = 4
    3.33705971325437689e0, // n = 5
    3.62343266012842902e0, // n = 6
    3.88892390687354883e0, // n = 7
    4.13751683033903461e0, // n = 8
    4.37207122833338069e0, // n = 9
    4.59472213944226660e0, // n = 10
    4.80711335306583720e0, // n = 11
    5.01054232209136252e0, // n = 12
    5.20605437905808088e0, // n = 13
    5.39450637313573544e0, // n = 14
    5.57661104385972184e0, // n = 15
    5.75296880993357718e0, // n = 16
    5.92409107709311478e0, // n = 17
    6.09041767578427340e0, // n = 18
    6.25233013984954589e0, // n = 19
    6.41016197758255402e0, // n = 20
];
