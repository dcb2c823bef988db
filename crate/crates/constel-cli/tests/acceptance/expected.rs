//! Expected values for the bundled 58-tuple dataset. Exact integers are
//! spelled out; everything else is a decimal-scientific rendering at the
//! stated number of significant digits.

/// Gap histogram of the prime-gap constellation of length 459: 16 bins
/// whose counts sum to 459.
pub const PRIME_GAP_HIST: [(u64, u64); 16] = [
    (1, 1),
    (2, 86),
    (4, 92),
    (6, 112),
    (8, 44),
    (10, 43),
    (12, 32),
    (14, 18),
    (16, 8),
    (18, 9),
    (20, 3),
    (22, 5),
    (24, 2),
    (26, 2),
    (28, 1),
    (34, 1),
];

/// Gap histogram of dataset tuple #4: 12 bins summing to 459.
pub const S4_GAP_HIST: [(u64, u64); 12] = [
    (2, 85),
    (4, 77),
    (6, 118),
    (8, 44),
    (10, 57),
    (12, 32),
    (14, 18),
    (16, 12),
    (18, 11),
    (20, 2),
    (22, 2),
    (24, 1),
];

/// q − ν_q for tuple #4, every prime 13 ≤ q ≤ 499. Primes below 13 leave a
/// single admissible residue as well.
pub const S4_RESIDUE_COUNTS: [(u64, u64); 90] = [
    (13, 1), (17, 1), (19, 1), (23, 1), (29, 1), (31, 1),
    (37, 1), (41, 1), (43, 1), (47, 1), (53, 1), (59, 1),
    (61, 1), (67, 1), (71, 1), (73, 1), (79, 1), (83, 1),
    (89, 1), (97, 1), (101, 1), (103, 1), (107, 1), (109, 1),
    (113, 1), (127, 1), (131, 1), (137, 1), (139, 2), (149, 1),
    (151, 1), (157, 3), (163, 1), (167, 3), (173, 2), (179, 4),
    (181, 3), (191, 9), (193, 5), (197, 5), (199, 5), (211, 11),
    (223, 9), (227, 13), (229, 8), (233, 9), (239, 11), (241, 17),
    (251, 14), (257, 16), (263, 23), (269, 19), (271, 17), (277, 21),
    (281, 28), (283, 21), (293, 30), (307, 33), (311, 37), (313, 35),
    (317, 39), (331, 39), (337, 48), (347, 49), (349, 49), (353, 57),
    (359, 60), (367, 66), (373, 69), (379, 66), (383, 72), (389, 83),
    (397, 86), (401, 82), (409, 88), (419, 95), (421, 96), (431, 105),
    (433, 100), (439, 101), (443, 108), (449, 113), (457, 109), (461, 113),
    (463, 131), (467, 124), (479, 134), (487, 130), (491, 141), (499, 138),
];

/// Number of admissible instances of tuple #4 mod q# for 137 ≤ q ≤ 293:
/// exact counts up to 211, four-significant-digit renderings beyond.
pub const S4_STAGE_COUNTS: [(u64, &str); 30] = [
    (137, "1"),
    (139, "2"),
    (149, "2"),
    (151, "2"),
    (157, "6"),
    (163, "6"),
    (167, "18"),
    (173, "36"),
    (179, "144"),
    (181, "432"),
    (191, "3888"),
    (193, "19440"),
    (197, "97200"),
    (199, "486000"),
    (211, "5346000"),
    (223, "4.811E7"),
    (227, "6.255E8"),
    (229, "5.004E9"),
    (233, "4.503E10"),
    (239, "4.954E11"),
    (241, "8.421E12"),
    (251, "1.179E14"),
    (257, "1.886E15"),
    (263, "4.339E16"),
    (269, "8.244E17"),
    (271, "1.401E19"),
    (277, "2.943E20"),
    (281, "8.240E21"),
    (283, "1.730E23"),
    (293, "5.191E24"),
];

/// w_s(∞) per dataset tuple: factor 1 and factor 2 at three significant
/// digits, their product at four. Mirror pairs share a row.
pub const W_TABLE: [(&str, &str, &str); 58] = [
    ("1.28E72", "2.47E17", "3.161E89"),
    ("3.96E72", "2.23E17", "8.810E89"),
    ("4.22E72", "2.18E17", "9.203E89"),
    ("2.60E72", "2.24E17", "5.805E89"),
    ("1.91E72", "2.14E17", "4.075E89"),
    ("1.46E72", "2.24E17", "3.281E89"),
    ("6.58E72", "2.55E17", "1.674E90"),
    ("3.54E72", "2.56E17", "9.058E89"),
    ("7.73E72", "2.50E17", "1.935E90"),
    ("3.99E72", "2.51E17", "1.004E90"),
    ("4.58E72", "2.54E17", "1.161E90"),
    ("9.12E72", "2.48E17", "2.263E90"),
    ("9.76E72", "2.50E17", "2.441E90"),
    ("1.01E73", "2.51E17", "2.536E90"),
    ("1.16E73", "2.55E17", "2.950E90"),
    ("1.30E73", "2.46E17", "3.190E90"),
    ("7.16E72", "2.50E17", "1.791E90"),
    ("8.19E72", "2.52E17", "2.067E90"),
    ("1.00E73", "2.44E17", "2.443E90"),
    ("1.21E73", "2.56E17", "3.085E90"),
    ("2.11E73", "2.40E17", "5.063E90"),
    ("2.59E73", "2.51E17", "6.508E90"),
    ("3.04E73", "2.55E17", "7.741E90"),
    ("2.55E73", "2.43E17", "6.188E90"),
    ("2.92E73", "2.37E17", "6.922E90"),
    ("3.48E73", "2.49E17", "8.657E90"),
    ("1.76E73", "2.43E17", "4.281E90"),
    ("2.10E73", "2.52E17", "5.298E90"),
    ("1.16E73", "2.32E17", "2.691E90"),
    ("1.16E73", "2.32E17", "2.691E90"),
    ("2.10E73", "2.52E17", "5.298E90"),
    ("1.76E73", "2.43E17", "4.281E90"),
    ("3.48E73", "2.49E17", "8.657E90"),
    ("2.92E73", "2.37E17", "6.922E90"),
    ("2.55E73", "2.43E17", "6.188E90"),
    ("3.04E73", "2.55E17", "7.741E90"),
    ("2.59E73", "2.51E17", "6.508E90"),
    ("2.11E73", "2.40E17", "5.063E90"),
    ("1.21E73", "2.56E17", "3.085E90"),
    ("1.00E73", "2.44E17", "2.443E90"),
    ("8.19E72", "2.52E17", "2.067E90"),
    ("7.16E72", "2.50E17", "1.791E90"),
    ("1.30E73", "2.46E17", "3.190E90"),
    ("1.16E73", "2.55E17", "2.950E90"),
    ("1.01E73", "2.51E17", "2.536E90"),
    ("9.76E72", "2.50E17", "2.441E90"),
    ("9.12E72", "2.48E17", "2.263E90"),
    ("4.58E72", "2.54E17", "1.161E90"),
    ("3.99E72", "2.51E17", "1.004E90"),
    ("7.73E72", "2.50E17", "1.935E90"),
    ("3.54E72", "2.56E17", "9.058E89"),
    ("6.58E72", "2.55E17", "1.674E90"),
    ("1.46E72", "2.24E17", "3.281E89"),
    ("1.91E72", "2.14E17", "4.075E89"),
    ("2.60E72", "2.24E17", "5.805E89"),
    ("4.22E72", "2.18E17", "9.203E89"),
    ("3.96E72", "2.23E17", "8.810E89"),
    ("1.28E72", "2.47E17", "3.161E89"),
];

/// Leading term (m, p) of the smallest admissible instance per tuple when
/// searched through stage 211 under a 40M-instance frontier cap, with the
/// magnitude m·p# at four significant digits.
pub const MIN_TERMS: [(u64, u64, &str); 58] = [
    (2, 193, "3.979E77"),
    (6, 191, "6.185E75"),
    (7, 191, "7.216E75"),
    (87, 191, "8.969E76"),
    (6, 193, "1.194E78"),
    (5, 193, "9.948E77"),
    (6, 191, "6.185E75"),
    (68, 191, "7.010E76"),
    (1, 193, "1.990E77"),
    (62, 191, "6.392E76"),
    (2, 193, "3.979E77"),
    (77, 191, "7.938E76"),
    (126, 191, "1.299E77"),
    (114, 191, "1.175E77"),
    (30, 191, "3.093E76"),
    (37, 191, "3.814E76"),
    (97, 191, "1.000E77"),
    (61, 191, "6.288E76"),
    (167, 191, "1.722E77"),
    (8, 191, "8.247E75"),
    (60, 191, "6.185E76"),
    (44, 191, "4.536E76"),
    (80, 181, "4.318E74"),
    (18, 181, "9.715E73"),
    (1, 193, "1.990E77"),
    (64, 191, "6.598E76"),
    (32, 191, "3.299E76"),
    (7, 191, "7.216E75"),
    (98, 191, "1.010E77"),
    (157, 191, "1.619E77"),
    (19, 191, "1.959E76"),
    (54, 191, "5.567E76"),
    (7, 191, "7.216E75"),
    (21, 191, "2.165E76"),
    (1, 191, "1.031E75"),
    (82, 181, "4.426E74"),
    (29, 191, "2.990E76"),
    (5, 191, "5.154E75"),
    (43, 191, "4.433E76"),
    (13, 191, "1.340E76"),
    (1, 193, "1.990E77"),
    (2, 193, "3.979E77"),
    (11, 191, "1.134E76"),
    (58, 191, "5.979E76"),
    (28, 191, "2.887E76"),
    (24, 191, "2.474E76"),
    (56, 191, "5.773E76"),
    (1, 193, "1.990E77"),
    (3, 193, "5.969E77"),
    (24, 191, "2.474E76"),
    (1, 193, "1.990E77"),
    (85, 191, "8.763E76"),
    (1, 193, "1.990E77"),
    (1, 193, "1.990E77"),
    (2, 193, "3.979E77"),
    (101, 191, "1.041E77"),
    (149, 191, "1.536E77"),
    (110, 191, "1.134E77"),
];

/// The unique instance of the #4 family mod 59#: decimal value and
/// primorial-coordinate digits.
pub const G0_59_VALUE: &str = "436569293994482242547";
pub const G0_59_DIGITS: [u64; 17] = [1, 2, 2, 3, 0, 6, 8, 9, 5, 7, 1, 23, 38, 34, 46, 20, 13];

/// The unique instance of tuple #4 mod 137#, exactly.
pub const G0_137_S4: &str = "22802368603450952345839570551524553888948310533546197";

/// Smallest admissible instance of tuple #4 mod 211#, exactly.
pub const MIN_S4_211: &str =
    "1330600719544350445334201776230010549657262881398991238979298063368611877656297";

/// Smallest admissible instance of tuple #23 mod 199#, exactly — the
/// smallest over the whole dataset through stage 211.
pub const MIN_T23_199: &str =
    "97331272522668040874481090743707889790613745642855934336491860350956096837";
