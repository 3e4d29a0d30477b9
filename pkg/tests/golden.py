# Partial latin square of the order-18 example, 0 = undetermined.
ORDER18_SQUARE = (
    ( 0,  0,  0,  4,  5,  6,  7,  8,  9, 10, 11, 12, 13, 14, 15, 16, 17, 18),
    ( 0,  0,  0,  6,  4,  5,  9,  7,  8, 12, 10, 11, 15, 13, 14, 18, 16, 17),
    ( 0,  0,  0,  5,  6,  4,  8,  9,  7, 11, 12, 10, 14, 15, 13, 17, 18, 16),
    ( 4,  6,  5,  0,  0,  0,  2,  3,  1, 15, 13, 14, 16, 17, 18, 11, 12, 10),
    ( 5,  4,  6,  0,  0,  0,  3,  1,  2, 13, 14, 15, 17, 18, 16, 12, 10, 11),
    ( 6,  5,  4,  0,  0,  0,  1,  2,  3, 14, 15, 13, 18, 16, 17, 10, 11, 12),
    ( 7,  9,  8,  2,  3,  1,  0,  0,  0, 17, 18, 16, 10, 11, 12, 15, 13, 14),
    ( 8,  7,  9,  3,  1,  2,  0,  0,  0, 18, 16, 17, 11, 12, 10, 13, 14, 15),
    ( 9,  8,  7,  1,  2,  3,  0,  0,  0, 16, 17, 18, 12, 10, 11, 14, 15, 13),
    (10, 12, 11, 16, 17, 18, 13, 14, 15,  3,  1,  2,  7,  8,  9,  4,  5,  6),
    (11, 10, 12, 17, 18, 16, 14, 15, 13,  1,  2,  3,  8,  9,  7,  5,  6,  4),
    (12, 11, 10, 18, 16, 17, 15, 13, 14,  2,  3,  1,  9,  7,  8,  6,  4,  5),
    (13, 15, 14, 11, 12, 10, 18, 16, 17,  4,  5,  6,  1,  2,  3,  9,  7,  8),
    (14, 13, 15, 12, 10, 11, 16, 17, 18,  5,  6,  4,  2,  3,  1,  7,  8,  9),
    (15, 14, 13, 10, 11, 12, 17, 18, 16,  6,  4,  5,  3,  1,  2,  8,  9,  7),
    (16, 18, 17, 15, 13, 14, 11, 12, 10,  8,  9,  7,  4,  5,  6,  2,  3,  1),
    (17, 16, 18, 13, 14, 15, 12, 10, 11,  9,  7,  8,  5,  6,  4,  3,  1,  2),
    (18, 17, 16, 14, 15, 13, 10, 11, 12,  7,  8,  9,  6,  4,  5,  1,  2,  3),
)
