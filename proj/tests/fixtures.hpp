#pragma once

// Hand-checked topologies reused across test files. All are ASCII grids as
// accepted by TopologyMatrix::parse: row i = receiver i, column j =
// transmitter j, diagonal always 1.

namespace fixtures {

// Two alliances {1,2} | {3,4}, full mutual interference.
inline const char* k4_two_pairs = "1011\n0111\n1110\n1101\n";

// Alliances {1,2,3} | {4}: message 4 interferes with 1, all of {1,2,3}
// interfere with 4.
inline const char* k4_three_one = "1001\n0101\n0011\n1111\n";

// Three alliances {1,2} | {3,4} | {5,6}; each message is interfered with by
// exactly one foreign alliance.
inline const char* k6_three_pairs =
    "101100\n"
    "010011\n"
    "111000\n"
    "000111\n"
    "110010\n"
    "001101\n";

// Cyclic interference over three singleton alliances; its row-relabelled twin
// below is the same network up to renaming.
inline const char* k3_cycle = "110\n011\n101\n";
inline const char* k3_cycle_alt = "101\n110\n011\n";

// Receiver 4 hears 5 while {4,5} align (witness: receiver 6 hears both), so
// no vertex coloring of the alignment sets decodes everyone at rate 1/2.
inline const char* k6_conflicted =
    "100001\n"
    "010001\n"
    "001001\n"
    "000110\n"
    "111010\n"
    "000111\n";

// Optimal but expandable: receiver 8 hears only part of {1,3,7}, receiver 4
// hears nobody, and sets {2,4} / {5,6} never interfere.
inline const char* k8_expandable =
    "11010000\n"
    "01000001\n"
    "00100001\n"
    "00010000\n"
    "10101010\n"
    "00000101\n"
    "00001110\n"
    "10100001\n";

// k8_expandable grown to a maximal topology by merging unlinked sets.
inline const char* k8_expanded_merge =
    "11011100\n"
    "01000001\n"
    "00100001\n"
    "10110010\n"
    "10101010\n"
    "00000101\n"
    "01011110\n"
    "10100011\n";

// k8_expandable grown to a maximal topology by adding links only.
inline const char* k8_expanded_links =
    "11010000\n"
    "01000001\n"
    "00100001\n"
    "00011100\n"
    "10101010\n"
    "00000101\n"
    "00001110\n"
    "10100011\n";

// Maximal with alliances {1,2,3,4} | {5,6,7} | {8,9}; the identity blocks,
// full interference segments, and pairwise coverage are all visible once rows
// and columns sit in that order.
inline const char* k9_blockform =
    "100011100\n"
    "010011100\n"
    "001000011\n"
    "000100011\n"
    "111110000\n"
    "111101000\n"
    "000000111\n"
    "111100010\n"
    "000011101\n";

// Same intended grouping but receivers 5 and 7 hear only part of the merged
// set {1,2,3,4,8,9}, so the block test fails.
inline const char* k9_blockform_broken =
    "100011100\n"
    "010011100\n"
    "001011100\n"
    "000111100\n"
    "111110000\n"
    "111101011\n"
    "111100100\n"
    "000011110\n"
    "000011101\n";

// Receiver 4 witnesses the alignment of {1,3}; rows 2 and 5 hear nobody.
inline const char* k5_sparse =
    "10000\n"
    "01000\n"
    "00100\n"
    "10110\n"
    "00001\n";

// Every receiver hears exactly two foreign equivalence classes; maximal for
// the rate-1/3 criterion.
inline const char* k7_depth2 =
    "1011110\n"
    "0111001\n"
    "1110110\n"
    "1101001\n"
    "0011101\n"
    "1100011\n"
    "0011111\n";

// k7_depth2 with receivers 2 and 5 each hearing only one foreign class.
inline const char* k7_depth2_broken =
    "1011110\n"
    "0111000\n"
    "1110110\n"
    "1101001\n"
    "0000101\n"
    "1100011\n"
    "0011111\n";

// Columns 1,2 agree everywhere off their own rows and never hear each other,
// yet the link (1,2) is still addable: equivalence classes alone cannot
// certify rate-1/2 maximality.
inline const char* k4_colpair_trap = "1010\n0101\n0011\n0011\n";

}  // namespace fixtures
