//! Small worked examples with hand-computed expected values.

use crate::represent::Representation;

/// A 3-representation on `1..5` whose complex has facets `{1,2}`,
/// `{2,3,4}` and `{2,4,5}`.
pub fn five_element_representation() -> Representation {
    Representation::from_labels(&[&["1", "2", "5", "4", "3"], &["3", "2", "1", "4", "5"], &["5", "4", "3", "2", "1"]])
        .expect("valid table")
}

pub const FIVE_ELEMENT_FACETS: [&[&str]; 3] = [&["1", "2"], &["2", "3", "4"], &["2", "4", "5"]];

/// A 3-representation on `{a, b, c}` whose complex is the full triangle.
pub fn triangle_representation() -> Representation {
    Representation::from_labels(&[&["b", "c", "a"], &["a", "c", "b"], &["a", "b", "c"]]).expect("valid table")
}

/// Nonzero entries of the triangle's system as
/// `(edge, order, vertex, coordinate, value)`, orders and coordinates 1-based.
pub const TRIANGLE_MATRIX: [(&str, usize, &str, usize, i8); 24] = [
    ("bc", 1, "b", 1, -1),
    ("bc", 1, "c", 1, 1),
    ("ac", 1, "a", 1, 1),
    ("ac", 1, "c", 1, -1),
    ("ab", 1, "a", 1, 1),
    ("ab", 1, "b", 1, -1),
    ("bc", 2, "b", 2, 1),
    ("bc", 2, "c", 2, -1),
    ("ac", 2, "a", 2, -1),
    ("ac", 2, "c", 2, 1),
    ("ab", 2, "a", 2, -1),
    ("ab", 2, "b", 2, 1),
    ("bc", 3, "b", 1, 1),
    ("bc", 3, "c", 1, -1),
    ("bc", 3, "b", 2, 1),
    ("bc", 3, "c", 2, -1),
    ("ac", 3, "a", 1, 1),
    ("ac", 3, "c", 1, -1),
    ("ac", 3, "a", 2, 1),
    ("ac", 3, "c", 2, -1),
    ("ab", 3, "a", 1, 1),
    ("ab", 3, "b", 1, -1),
    ("ab", 3, "a", 2, 1),
    ("ab", 3, "b", 2, -1),
];

/// The triangle's system, one strict inequality per row.
pub const TRIANGLE_INEQUALITIES: [&str; 9] = [
    "b_1 < c_1",
    "c_1 < a_1",
    "b_1 < a_1",
    "c_2 < b_2",
    "a_2 < c_2",
    "a_2 < b_2",
    "c_1 + c_2 < b_1 + b_2",
    "c_1 + c_2 < a_1 + a_2",
    "b_1 + b_2 < a_1 + a_2",
];

/// A solution of the triangle's system, first two coordinates per vertex.
pub const TRIANGLE_SOLUTION: [(&str, [&str; 2]); 3] =
    [("a", ["7/10", "1/10"]), ("b", ["1/10", "3/5"]), ("c", ["3/10", "3/10"])];
