"""Golden lists of extremal Heegner divisors used by the table commands."""
from fractions import Fraction as F

# d -> [(m, a)] for P_{-m, a l*} on F_2d
K3_TABLE = {
    1: [(F(1, 4), 1)],
    2: [(F(1, 8), 1), (F(1, 2), 2)],
    3: [(F(1, 12), 1), (F(1, 3), 2)],
    4: [(F(1, 16), 1), (F(9, 16), 3), (F(1, 4), 2)],
    5: [(F(1, 20), 1), (F(9, 20), 3), (F(1, 5), 2)],
    6: [(F(1, 24), 1), (F(1, 6), 2), (F(3, 8), 3), (F(1, 24), 5), (F(1, 2), 6)],
    7: [(F(1, 28), 1), (F(1, 7), 2), (F(9, 28), 3), (F(4, 7), 4), (F(2, 7), 6)],
    8: [(F(1, 32), 1), (F(1, 8), 2), (F(9, 32), 3), (F(1, 2), 4), (F(1, 8), 6), (F(17, 32), 7)],
    9: [(F(1, 36), 1), (F(1, 9), 2), (F(1, 4), 3), (F(4, 9), 4), (F(13, 36), 7), (F(1, 4), 9)],
    10: [(F(1, 40), 1), (F(1, 10), 2), (F(9, 40), 3), (F(2, 5), 4), (F(5, 8), 5), (F(9, 40), 7), (F(3, 5), 8), (F(1, 40), 9), (F(1, 2), 10)],
    11: [(F(1, 44), 1), (F(1, 11), 2), (F(9, 44), 3), (F(4, 11), 4), (F(25, 44), 5), (F(5, 44), 7), (F(5, 11), 8), (F(3, 11), 10)],
    12: [(F(1, 48), 1), (F(1, 12), 2), (F(3, 16), 3), (F(1, 3), 4), (F(25, 48), 5), (F(1, 48), 7), (F(1, 3), 8), (F(11, 16), 9), (F(1, 12), 10), (F(25, 48), 11)],
    13: [(F(1, 52), 1), (F(1, 13), 2), (F(9, 52), 3), (F(4, 13), 4), (F(25, 52), 5), (F(3, 13), 8), (F(29, 52), 9), (F(17, 52), 11), (F(1, 4), 13)],
    14: [(F(1, 56), 1), (F(1, 14), 2), (F(9, 56), 3), (F(2, 7), 4), (F(25, 56), 5), (F(9, 14), 6), (F(1, 7), 8), (F(25, 56), 9), (F(9, 56), 11), (F(4, 7), 12), (F(1, 56), 13), (F(1, 2), 14)],
    15: [(F(1, 60), 1), (F(1, 15), 2), (F(3, 20), 3), (F(4, 15), 4), (F(5, 12), 5), (F(3, 5), 6), (F(1, 15), 8), (F(7, 20), 9), (F(2, 3), 10), (F(1, 60), 11), (F(2, 5), 12), (F(4, 15), 14)],
    16: [(F(1, 64), 1), (F(1, 16), 2), (F(9, 64), 3), (F(1, 4), 4), (F(25, 64), 5), (F(9, 16), 6), (F(17, 64), 9), (F(9, 16), 10), (F(1, 4), 12), (F(41, 64), 13), (F(1, 16), 14), (F(33, 64), 15)],
    17: [(F(1, 68), 1), (F(1, 17), 2), (F(9, 68), 3), (F(4, 17), 4), (F(25, 68), 5), (F(9, 17), 6), (F(13, 68), 9), (F(8, 17), 10), (F(2, 17), 12), (F(33, 68), 13), (F(21, 68), 15), (F(1, 4), 17)],
    18: [(F(1, 72), 1), (F(1, 18), 2), (F(1, 8), 3), (F(2, 9), 4), (F(25, 72), 5), (F(1, 2), 6), (F(49, 72), 7), (F(1, 8), 9), (F(7, 18), 10), (F(49, 72), 11), (F(25, 72), 13), (F(1, 8), 15), (F(5, 9), 16), (F(1, 72), 17), (F(1, 2), 18)],
    19: [(F(1, 76), 1), (F(1, 19), 2), (F(9, 76), 3), (F(4, 19), 4), (F(25, 76), 5), (F(9, 19), 6), (F(49, 76), 7), (F(5, 76), 9), (F(6, 19), 10), (F(45, 76), 11), (F(17, 76), 13), (F(11, 19), 14), (F(7, 19), 16), (F(5, 19), 18), (F(3, 4), 19)],
    20: [(F(1, 80), 1), (F(1, 20), 2), (F(9, 80), 3), (F(1, 5), 4), (F(5, 16), 5), (F(9, 20), 6), (F(49, 80), 7), (F(1, 80), 9), (F(1, 4), 10), (F(41, 80), 11), (F(9, 80), 13), (F(9, 20), 14), (F(1, 5), 16), (F(49, 80), 17), (F(1, 20), 18), (F(41, 80), 19)],
}

# (r_min, r_max, j): P_{-1} .. P_{-j} on U^2 + E8(-1)^r
UNIMODULAR_BANDS = ((4, 7, 1), (8, 12, 2), (13, 16, 3), (17, 20, 4), (21, 24, 5))
