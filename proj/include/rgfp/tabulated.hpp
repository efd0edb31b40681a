#pragma once

// Tabulated form of the strip polynomial e(x, z) as e_c + e_r, with s
// standing for 1 - z.  Expressions use the syntax of expr_parser.hpp:
// juxtaposition multiplies, so "21 5 s" is 105 s.  R5..R10 are bound to
// the formulas in conditions.hpp when parsed.

#include <array>
#include <string_view>
#include <utility>

namespace rgfp::tabulated {

/// e_c: terms proportional to R5..R10.
inline constexpr std::string_view kDisplayedPart =
    "3 a R5 z x^7 + 3 a R6 z x^8 + 8 b R5 z x^8 + 3 a R7 z^2 (1 + s ) x^9 + 8 b R6 z x^9 + 15 f5 R5 z x^9 "
    "+ 3 a R8 z^3 (1 + 2 s ) x^10 + 8 b R7 z^2 (1 + s ) x^10 + 15 f5 R6 z x^10 + R5 (a^2 (144 z^3 + 36 "
    "z^3 s ) + f6 24 z) x^10 + 8 b R8 z^3 (1 + 2 s ) x^11 + 15 f5 R7 z^2 (1 + s ) x^11 + R6 (6 a^2 z^3 "
    "(18 + 6 z + 6 z s ) + f6 24 z) x^11 + R5 (g5 (3 z^2 + 45 z^2 s + 6 z^4 + 16 z^5) + h3 (4 z^2 + 12 "
    "z^2 s^2 + 11 z^5) + a b 24 s^2 z^2 (8 + z)) x^11 + R9 (3 z^4 + 9 z^4 s ) a x^11 + R10 a 6 (1 + 4 s ) "
    "z^5 x^12 + R9 b 8 (1 + 3 s ) z^4 x^12 + R7 f6 24 (1 + s ) z^2 x^12 + R8 f5 (1 + 2 s ) z^3 15 x^12 + "
    "R7 a^2 18 z^3 (3 + 4 z + z^2 + 4 z^2 s ) x^12 + R6 h3 (6 z^4 + 9 z^5) x^12 + R6 g5 5 z^2 (9 s + z^2 "
    "+ 5 z^2 s + 4 z^4) x^12 + R5 h4 4 z^3 (1 + 8 s + z^2 + 4 z^3) x^12 + R9 f5 15 (1 + 3 s ) z^4 x^13 + "
    "R10 b 16 (1 + 4 s ) z^5 x^13 + R8 f6 24 z^3 (1 + 2 s ) x^13 + R8 a^2 9 z^4 (16 + 4 (1 + z) s ) x^13 "
    "+ R7 g5 (25 z^3 s + 25 z^3 (1 + z) s + 25 z^6) x^13 + R5 n3 3 z^3 (10 z s + 7 z^3) x^13 + R7 h3 (5 "
    "z^5 + 10 z^6) x^13 + R5 a f6 108 z^3 s^3 x^13 + R6 h4 (16 z^4 + 8 z^4 (1 + z) s + 8 z^7) x^13 + R10 "
    "f5 30 z^5 (1 + 4 s ) x^14 + R9 f6 24 (1 + 3 s ) z^4 x^14 + R9 a^2 18/5 (39 + 46 s ) z^5 x^14 + R6 n3 "
    "(21 z^5 + 3 z^6) x^14 + R7 h4 22 z^5 x^14 + R8 g5 (25 z^4 + 8 z^4 s + 6 z^4 (1 + z) s ) x^14 + R8 h3 "
    "3 (5 + 3 s ) z^6 x^14 + R5 a24 (10 z^5 + 6 z^6) x^14 + R10 f6 48 z^5 (1 + 4 s ) x^15 + R10 a^2 288 "
    "(1 + 2 s ) z^6 x^15 + R9 h3 18 z^5 x^15 + R5 a15 12 z^6 x^15 + R9 g5 2/5 (61 + 94 s ) z^5 x^15 + R6 "
    "a24 24 z^5 x^15 + R8 h4 z^5 (4 + 20 z + 20 z s ) x^15 + R7 n3 21 z^6 x^15 + R8 n3 z^7 (21 + 9 s ) "
    "x^16 + R10 g5 (50 z^6 + 120 z^6 s ) x^16 + R10 h3 (30 z^7 + 24 z^7 s ) x^16 + R9 h4 (23 z^6 + 8 z^6 "
    "s ) x^16 + R7 a24 26 z^6 x^16 + R6 a15 13 z^6 x^16 + R10 h4 (48 z^7 + 64 z^7 s ) x^17 + R9 n3 (17 "
    "z^7 + z^8 + 7 z^8 s ) x^17 + R8 a24 16 z^8 x^17 + R7 a15 (2 z^8 + 12 z^9) x^17 + R10 n3 (42 z^8 + 24 "
    "z^8 s ) x^18 + R9 a24 (3 z^8 + 14 z^9) x^18 + R8 a15 (10 z^8 + 5 z^9) x^18 + R10 a24 32 z^9 x^19 + "
    "R9 a15 (z^9 + 8 z^10) x^19 + R10 a15 (10 z^10 + 8 z^11) x^20 ";

/// e_r = sum over n of C[n] x^n, n = 9..30.  Entries are (n, C[n]).
inline constexpr std::array<std::pair<int, std::string_view>, 22> kRemainderTable = {{
    {9,
        "12 a (54 a^3 + 10 b f5 + 9 a f6) s^2 z "},
    {10,
        "s^2 z (320 b^2 f5 + 144 a b (18 a^2 z + f6 (3 + 2 z)) + 3 a (25 f5^2 (1 + 2 z) + 3 (22 a g5 + 16 a "
        "g5 z + 4 a h3 z + 5 a05 z^2))) "},
    {11,
        "s^2 z (15 g5^2 + 38 g5^2 z + 110 g5 h3 z + 32 h3^2 z + 16 g5^2 z^2 + 43 g5 h3 z^2 + 22 h3^2 z^2 + "
        "144 a^2 h4 z (1 + z) + 2160 a^3 f5 z (1 + 2 z) + 384 b^2 (f6 + 2 f6 z) + 180 a f5 f6 (4 + 2 z + 3 "
        "z^2) + 40 b (3 a05 z^2 + 10 f5^2 (2 + z))) "},
    {12,
        "s^2 z (225 a05 f5 z^2 + 432 b^2 h3 z^2 + 360 a f5 h3 z^3 + f5^3 (375 + 750 z) + b f5 f6 (2160 + 2400 "
        "z + 1440 z^2) + b^2 g5 (400 z^2 + 320 z^2 s) + h3 h4 (90 z^2 + 32 z^3) + g5 h4 (104 z + 66 z^2 + 56 "
        "z^3) + a f6^2 (972 + 216 z + 324 z^2 + 432 z^3) + a^2 b f5 (12960 z + 10800 z^2 + 2880 z^3) + a^3 f6 "
        "(1296 z + 5832 z^2 + 7776 z^3) + a^5 (23328 z^2 + 31104 z^3)) "},
    {13,
        "z (72 a b n3 z^5 + a05 f6 360 s^2 z^2 + f5^2 f6 300 s^2 (5 + 10 z + 9 z^2) + a^3 g5 1080 z^4 (1 + 4 "
        "s) + a^3 h3 216 z^3 (3 + s (12 + 7 z)) + a f6 g5 36 z ( 5 z^4 + 25 z^3 s + 35 s^2 + s^3 (15 + 8 z)) "
        "+ a f6 h3 36 z^3 ((3 + 16 z) s + 3) + a^2 a24 ( 36 z^4 + 144 z^4 s) + h3 n3 72 s^2 z^3 + g5 n3 3 s "
        "z^2 ( 32 s (1 + z) + 2 + 3 z) + b f5 h3 80 s z^2 ( 5 + s (10 + 7 z)) + b f5 g5 200 s^2 z (10 + 10 z "
        "+ 3 z^2) + a^2 a05 900 s^2 z^3 + a^2 f5^2 900 s^2 z (10 + 20 z + z^2) + b f6^2 288 s^2 (5 + 10 z + 3 "
        "z^2 + 4 z^3) + a^2 b f6 864 s^2 z (20 + 13 z + 21 z^2) + a^4 b 51840 s^2 z^2 (1 + z) + a f5 h4 120 "
        "z^2 ( 1 + 2 z^3 s + 9 s^2) + b^2 h4 128 s^2 z^2 (5 + 6 z + z s) + h4^2 16 s^2 z^2 (1 + z + z^2)) "},
    {14,
        "z/5 (a f6 h4 360 z^2 ( 3 + 6 s + 13 s^2 ) + a a24 b (720 z^4 + 720 z^4 s) + b^2 n3 240 z^3 ( 3 + s "
        "(8 + z)) + a24 g5 90 z^4 s + h4 n3 30 z^3 s^2 + a g5^2 75 z^2 (5 (1 + s)^2 + s^2 (35 + 12 z)) + a05 "
        "g5 975 s^2 z^3 + b f6 g5 240 z ( 4 z^3 + 6 z^4 + 46 s + (9 + 64 z) s^2) + a f5 n3 4950 s^2 z^3 + b "
        "f5 h4 400 z^2 ( 3 z^2 + 2 z^3 + 22 s + 22 z s^2) + f5 f6^2 900 s^2 (11 + 22 z + 33 z^2 + 12 z^3) + "
        "f5^2 g5 125 s^2 z (55 + 110 z + 126 z^2) + a^3 h4 864 z^3 (8 + 24 s + 23 s^2) + a^2 b g5 720 z^2 ( "
        "21 z^3 + 105 s + (5 + 37 z) s^2) + a^2 f5 f6 1080 z ( z^4 + z^2 5 s + 55 s^2 (2 + 4 z + 3 z^2)) + "
        "a^4 f5 6480 z^2 ( z^3 + z^2 5 s + 55 (1 + 2 z) s^2) + a24 h3 180 z^5 s + a h3^2 135 z^4 (1 + 4 s + 6 "
        "s^2) + f5^2 h3 375 s^2 z^2 (11 + 22 z + 3 z^2) + a g5 h3 90 z^3 ( 5 z^3 + 30 z^2 s + 8 s^2 (2 + 5 "
        "z)) + b f6 h3 720 z^2 ( 2 + 2 s (1 + z^2) + s^2 (7 + 3 z^2)) + a^2 b h3 432 z^3 ( 21 z^2 + 21 5 s + "
        "5 s^2 (1 + 6 z))) "},
    {15,
        "z/5 (b f5 n3 (3000 z^3 + 4200 z^3 (1 + z) s) + n3^2 45 z^4 s + b g5 h3 96 z^3 (7 z^2 + 7 5 s + 40 "
        "s^2) + a f6 n3 540 z^3 ( z^2 + z 4 s + 12 s^2) + b g5^2 80 z^2 ( 14 z^3 + 70 z^2 s + 75 s^2 (1 + 2 "
        "z)) + f5 f6 h3 1800 z^2 ( z^2 + 4 z^2 s + 6 s^2 (1 + 2 z)) + f6^3 4320 s^2 (1 + 2 z + 3 z^2 + 4 z^3) "
        "+ f5 f6 g5 360 z ( 13 z^4 + 65 z^3 s + 50 s^2 (1 + 2 z + 3 z^2)) + a24 h4 (80 z^5 + 400 z^5 s) + a15 "
        "h3 ( 105 z^4 + 15 s z^4 (23 + 5 z)) + a05 h4 100 z^4 s^2 + a h3 h4 1800 z^4 s^2 + f5^2 h4 500 z^2 ( "
        "6 + 6 s (1 + z) + 5 z^2 s^2) + a g5 h4 24 z^3 (28 z^2 + 28 5 s z + 25 s^2 (12 + 5 z)) + b f6 h4 960 "
        "z^2 ( 2 z^4 + 12 s + 3 s^2 z (4 + z)) + a^3 n3 3240 z^4 ( z + 4 s + 8 s^2) + a^2 f5 h3 10800 z^3 "
        "(z^3 + 3 (1 + s) s (1 + z)) + a^2 f6^2 25920 s^2 z (3 + 6 z + 9 z^2 + 2 z^3) + a^2 f5 g5 720 z^2 (39 "
        "z^3 + 5 39 s z^3 + 5 s^2 (30 + 60 z + 59 z^2)) + a^2 b h4 5760 z^3 ( 2 + 6 s + s^2 (4 + 13 z)) + a^4 "
        "f6 155520 s^2 z^2 (3 + 6 z + 4 z^2) + a^6 933120 s^2 z^3 (1 + 2 z)) "},
    {16,
        "z^2 (3 a15 h4 z^4 + a24 b f5 1040 z^3 s + a a24 f6 936 z^3 s + a h4^2 24 z^3 ( 3 + 15 s + 8 s^2) + "
        "f5 f6 h4 ( 29 60 z^2 + 60 (3 + s) s z (13 + 9 z + 8 z^2)) + f6^2 g5 180 ( 8 (1 + s z) + s^2 (5 + 2 z "
        "+ 7 z^2 + 12 z^3)) + b g5 h4 40 z^2 ( 9 z^2 + 48 s + 4 s^2 (1 + 14 z)) + a^2 f5 h4 360 z^2 ( 29 z^3 "
        "+ s (52 + 52 z + 21 z^2)) + f5 g5^2 125 z ( 3 + 6 s + 2 s^2 (2 + 7 z + 12 z^2)) + a^2 f6 g5 2160 z ( "
        "8 + 3 s + s^2 (2 + 7 z + 12 z^2)) + a^4 g5 6480 z^2 ( 8 z + s (1 + 5 z) + 12 s^2 (1 + z)) + a24 n3 ( "
        "30 z^4 + 36 z^4 (1 + z) s) + f5^2 n3 75 z^2 ( 6 + 18 s z^2 + s^2 (7 + 14 z + 3 z^2)) + a g5 n3 90 "
        "z^3 ( 1 + s (3 + z) (1 + 3 s)) + f5 h3^2 45 z^3 ( 3 + 12 s z + 2 s^2 (5 + 4 z)) + a h3 n3 54 z^4 ( 1 "
        "+ 5 s + 7 s^2) + b h3 h4 24 z^3 ( 9 z + 48 s + 4 s^2 (1 + 4 z)) + b f6 n3 144 z^2 ( 6 + 18 s z^2 + "
        "s^2 (7 + 14 z + 3 z^2)) + f6^2 h3 108 z (1 + z) ( 4 z^4 + 13 s (1 + z^2)) + f5 g5 h3 150 z^2 ( 3 z^3 "
        "+ 9 s (1 + z) + 4 s^2 (1 + z)^2) + a^2 b n3 864 z^3 (1 + z) (3 z^2 + 13 s) + a^2 f6 h3 1296 z^2 ( 8 "
        "z^4 + s (13 + 13 z + 13 z^2 + 4 z^3)) + a^4 h3 3888 z^3 (1 + z) ( 4 z^2 + 13 s)) "},
    {17,
        "z^3 (2100 f6 g5^2 + 12600 a^2 g5^2 z + 2520 f6 g5 h3 z + 15120 a^2 g5 h3 z^2 + 756 f6 h3^2 z^2 + "
        "4536 a^2 h3^2 z^3 + a^2 a24 b ( 3456 z^3 + 4608 z^3 s (1 + z)) + a24 b f6 (576 z^2 + 768 z^2 s (1 + "
        "z + z^2)) + a a24 g5 (360 z^3 + 480 z^3 s (1 + z)) + a24 f5^2 (300 z^2 + 400 z^2 s (1 + z + z^2)) + "
        "a a24 h3 (216 z^4 + 288 z^4 s) + f5 h3 h4 (1680 z^2 s (1 + z) + 960 z^5) + b h4^2 128 z^2 (z^3 + 7 s "
        "+ 7 s^2 z) + f6^2 h4 ( 2016 s (1 + z + z^2 + z^3) + 1152 z^5) + f5 g5 h4 ( 2800 z s (1 + z + z^2) + "
        "1600 z^5) + a^2 f6 h4 ( 24192 z s (1 + z + z^2) + 13824 z^5) + a^4 h4 ( 72576 z^2 s (1 + z) + 41472 "
        "z^5) + a^3 a15 432 s z^4 (7 + 6 z) + a15 b f5 ( 80 z^3 s (1 + z) + 480 z^3 s (1 + z + z^2)) + a a15 "
        "f6 ( 72 z^3 s (1 + z) + 432 z^3 s (1 + z + z^2)) + a15 n3 z^4 s^2 + b h3 n3 24 z^3 ( 24 z^3 + s (42 "
        "+ 25 z + 17 z^2)) + a h4 n3 24 z^3 ( 6 z^4 + s (7 + 3 z) (1 + 5 s + 2 z^2)) + b g5 n3 40 z^2 ( 24 "
        "z^4 + s (42 + 42 z + 25 z^2 + 17 z^3)) + f5 f6 n3 60 z ( 24 z^5 + s (42 + 42 z + 42 z^2 + 25 z^3 + "
        "17 z^4)) + a^2 f5 n3 360 z^2 ( 24 z^4 + s (42 + 42 z + 25 z^2 + 17 z^3))) "},
    {18,
        "z^4 (625 g5^3 + 3600 f6 g5 h4 + 1125 g5^2 h3 z + 21600 a^2 g5 h4 z + 2160 f6 h3 h4 z + 1200 f5 h4^2 "
        "z + 675 g5 h3^2 z^2 + 12960 a^2 h3 h4 z^2 + 135 h3^3 z^3 + a^2 a24 f5 ( 4680 z^2 + 1080 z^2 s (1 + "
        "z) + 5040 z^2 s (1 + z + z^2)) + a^2 a15 b ( 2880 z^3 s + 1440 z^3 s (1 + z)) + a24 f5 f6 (780 z + "
        "180 z s (1 + z + z^2) + 840 z s (1 + z + z^2 + z^3)) + a24 b g5 ( 520 z^2 + 120 z^2 s (1 + z) + 560 "
        "z^2 s (1 + z + z^2)) + a24 b h3 ( 312 z^3 + 72 z^3 s + 336 z^3 s (1 + z)) + a a24 h4 (312 z^3 + 72 "
        "z^3 s + 336 z^3 s (1 + z)) + a15 b f6 ( 480 z^2 s (1 + z) + 240 z^2 s (1 + z + z^2)) + a a15 g5 ( "
        "300 z^3 s + 150 z^3 s (1 + z)) + a15 f5^2 ( 250 z^2 s (1 + z) + 125 z^2 s (1 + z + z^2)) + a a15 h3 "
        "90 z^4 s + a15 a24 (27 z^4 + 2 z^5) + a n3^2 27 z^3 (1 + 2 s) (1 + 4 s) + f5 h3 n3 90 z^2 (1 + z) "
        "(15 s + 4 z^2) + b h4 n3 96 z^2 (1 + z) (15 s + 4 z^2) + f6^2 n3 108 (1 + z) ( 15 s (1 + z^2) + 4 "
        "z^4) + f5 g5 n3 150 z ( 8 z^4 + s (15 + 15 z + 15 z^2 + 4 z^3)) + a^2 f6 n3 1296 z (4 + 11 s (1 + z "
        "+ z^2) + 4 z^4) + a^4 n3 3888 z^2 (1 + z) ( 15 s + 4 z^2) + a05 a15 5 z^4 (2 + z) (2 + 3 s)) "},
    {19,
        "z^5 (1600 g5^2 h4 + 1536 f6 h4^2 + 2880 f6 g5 n3 + 1920 g5 h3 h4 z + 9216 a^2 h4^2 z + 17280 a^2 g5 "
        "n3 z + 1728 f6 h3 n3 z + 1920 f5 h4 n3 z + 576 h3^2 h4 z^2 + 10368 a^2 h3 n3 z^2 + 576 b n3^2 z^2 + "
        "a^4 a24 20736 ( z^2 + z^2 s (1 + z)) + a^2 a24 f6 6912 ( z + z s (1 + z + z^2)) + a24 f5 g5 800 z ( "
        "1 + s (1 + z + z^2)) + a24 f6^2 576 ( 1 + s (1 + z + z^2 + z^3)) + a24 b h4 512 z^2 (1 + s (1 + z)) "
        "+ a24 f5 h3 480 z^2 (1 + s (1 + z)) + a a24 n3 288 z^3 (1 + s) + a^2 a15 f5 ( 2520 z^2 + 360 z^2 s "
        "(1 + z) + 2880 z^2 s (1 + z + z^2)) + a15 f5 f6 ( 420 z + 60 z s (1 + z + z^2) + 480 z s (1 + z + "
        "z^2 + z^3)) + a15 b g5 ( 280 z^2 + 40 z^2 s (1 + z) + 320 z^2 s (1 + z + z^2)) + a15 b h3 (168 z^3 + "
        "24 z^3 s + 192 z^3 s (1 + z)) + a a15 h4 (168 z^3 + 24 z^3 s + 192 z^3 s (1 + z))) "},
    {20,
        "z^6 (2040 a24 f6 g5 + 1360 g5 h4^2 + 1275 g5^2 n3 + 2448 f6 h4 n3 + 12240 a^2 a24 g5 z + 1224 a24 f6 "
        "h3 z + 1360 a24 f5 h4 z + 816 h3 h4^2 z + 1530 g5 h3 n3 z + 14688 a^2 h4 n3 z + 765 f5 n3^2 z + 7344 "
        "a^2 a24 h3 z^2 + 816 a24 b n3 z^2 + 459 h3^2 n3 z^2 + 204 a a24^2 z^3 + a^4 a15 ( 10368 z^2 + 6480 "
        "z^2 s (1 + z) + 5184 z^2 s (1 + z + z^2)) + a^2 a15 f6 ( 3456 z + 2160 z s (1 + z + z^2) + 1728 z s "
        "(1 + z + z^2 + z^3)) + a15 f5 g5 ( 400 z + 250 z s (1 + z + z^2) + 200 z s (1 + z + z^2 + z^3)) + "
        "a15 f6^2 ( 288 + 180 s (1 + z + z^2 + z^3) + 144 s (1 + z + z^2 + z^3 + z^4)) + a15 b h4 ( 256 z^2 + "
        "160 z^2 s (1 + z) + 128 z^2 s (1 + z + z^2)) + a15 f5 h3 ( 240 z^2 + 150 z^2 s (1 + z) + 120 z^2 s "
        "(1 + z + z^2)) + a a15 n3 ( 144 z^3 + 90 z^3 s + 72 z^3 s (1 + z) )) "},
    {21,
        "1080 a15 f6 g5 z^7 + 900 a24 g5^2 z^7 + 1728 a24 f6 h4 z^7 + 384 h4^3 z^7 + 2160 g5 h4 n3 z^7 + 972 "
        "f6 n3^2 z^7 + 6480 a^2 a15 g5 z^8 + 648 a15 f6 h3 z^8 + 1080 a24 g5 h3 z^8 + 10368 a^2 a24 h4 z^8 + "
        "720 a15 f5 h4 z^8 + 1080 a24 f5 n3 z^8 + 1296 h3 h4 n3 z^8 + 5832 a^2 n3^2 z^8 + 288 a24^2 b z^9 + "
        "3888 a^2 a15 h3 z^9 + 324 a24 h3^2 z^9 + 432 a15 b n3 z^9 + 216 a a15 a24 z^10 "},
    {22,
        "475 a15 g5^2 z^8 + 912 a15 f6 h4 z^8 + 1520 a24 g5 h4 z^8 + 1368 a24 f6 n3 z^8 + 912 h4^2 n3 z^8 + "
        "855 g5 n3^2 z^8 + 380 a24^2 f5 z^9 + 570 a15 g5 h3 z^9 + 5472 a^2 a15 h4 z^9 + 912 a24 h3 h4 z^9 + "
        "8208 a^2 a24 n3 z^9 + 570 a15 f5 n3 z^9 + 513 h3 n3^2 z^9 + 304 a15 a24 b z^10 + 171 a15 h3^2 z^10 + "
        "57 a a15^2 z^11 "},
    {23,
        "480 a24^2 f6 z^9 + 800 a15 g5 h4 z^9 + 640 a24 h4^2 z^9 + 720 a15 f6 n3 z^9 + 1200 a24 g5 n3 z^9 + "
        "720 h4 n3^2 z^9 + 2880 a^2 a24^2 z^10 + 400 a15 a24 f5 z^10 + 480 a15 h3 h4 z^10 + 4320 a^2 a15 n3 "
        "z^10 + 720 a24 h3 n3 z^10 + 80 a15^2 b z^11 "},
    {24,
        "504 a15 a24 f6 z^10 + 420 a24^2 g5 z^10 + 336 a15 h4^2 z^10 + 630 a15 g5 n3 z^10 + 1008 a24 h4 n3 "
        "z^10 + 189 n3^3 z^10 + 3024 a^2 a15 a24 z^11 + 105 a15^2 f5 z^11 + 252 a24^2 h3 z^11 + 378 a15 h3 n3 "
        "z^11 "},
    {25,
        "132 a15^2 f6 z^11 + 440 a15 a24 g5 z^11 + 352 a24^2 h4 z^11 + 528 a15 h4 n3 z^11 + 396 a24 n3^2 z^11 "
        "+ 792 a^2 a15^2 z^12 + 264 a15 a24 h3 z^12 "},
    {26,
        "115 a15^2 g5 z^12 + 368 a15 a24 h4 z^12 + 276 a24^2 n3 z^12 + 207 a15 n3^2 z^12 + 69 a15^2 h3 z^13 "},
    {27,
        "64 a24^3 z^13 + 96 a15^2 h4 z^13 + 288 a15 a24 n3 z^13 "},
    {28,
        "100 a15 a24^2 z^14 + 75 a15^2 n3 z^14 "},
    {29,
        "52 a15^2 a24 z^15 "},
    {30,
        "9 a15^3 z^16 "},
}};

}  // namespace rgfp::tabulated
