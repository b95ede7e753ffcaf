//! Small named instances in the text graph format.
//!
//! These double as test fixtures and as presets for the browser demo.

/// Path 1-2-3 with `S = {1,3}`.
pub const P3: &str = "3 2 2\n1 2 1\n2 3 1\n1 3\n";

/// Two vertices joined by three parallel edges.
pub const TWO_VERTEX: &str = "2 1 2\n1 2 3\n1 2\n";

/// Four-cycle with every vertex Steiner.
pub const C4: &str = "4 4 4\n1 2 1\n2 3 1\n3 4 1\n4 1 1\n1 2 3 4\n";

/// Star with centre 4 and Steiner leaves 1, 2, 3.
pub const STAR: &str = "4 3 3\n4 1 1\n4 2 1\n4 3 1\n1 2 3\n";

/// Complete graph on four vertices, all Steiner.
pub const K4: &str = "4 6 4\n1 2 1\n1 3 1\n1 4 1\n2 3 1\n2 4 1\n3 4 1\n1 2 3 4\n";

/// Eight-cycle with Steiner vertices 1, 3, 5, 7, so `λ = 2`. The skeleton is a
/// 4-cycle and each even vertex is a stretched unit sitting on one cycle edge.
pub const EVEN_CYCLE: &str = "8 8 4\n1 2 1\n2 3 1\n3 4 1\n4 5 1\n5 6 1\n6 7 1\n7 8 1\n8 1 1\n1 3 5 7\n";

/// P3 with an extra pendant vertex 4 on vertex 1.
pub const P3_PENDANT: &str = "4 3 2\n1 2 1\n2 3 1\n1 4 1\n1 3\n";

/// Two stars (centres 7 and 8) whose centres share an edge of multiplicity 2.
pub const TWIN_STARS_HEAVY: &str = "8 7 6\n7 1 1\n7 2 1\n7 3 1\n8 4 1\n8 5 1\n8 6 1\n7 8 2\n1 2 3 4 5 6\n";

/// As [`TWIN_STARS_HEAVY`] but the centre edge has multiplicity 1.
pub const TWIN_STARS: &str = "8 7 6\n7 1 1\n7 2 1\n7 3 1\n8 4 1\n8 5 1\n8 6 1\n7 8 1\n1 2 3 4 5 6\n";

/// Path 1-2-3-4-5 with `S = {1,3,5}`; vertices 2 and 4 project to the two
/// different skeleton edges.
pub const CHAIN: &str = "5 4 3\n1 2 1\n2 3 1\n3 4 1\n4 5 1\n1 3 5\n";

/// Five Steiner vertices on a cycle of length ten: a skeleton cycle with five nodes.
pub const C10_FIVE: &str = "10 10 5\n1 2 1\n2 3 1\n3 4 1\n4 5 1\n5 6 1\n6 7 1\n7 8 1\n8 9 1\n9 10 1\n10 1 1\n1 3 5 7 9\n";

/// Four-cycle with `S = {1,3,4}`: vertex 2 is distinguished by the two
/// nested valid cuts `{1}` and `{3}`.
pub const C4_THREE: &str = "4 4 3\n1 2 1\n2 3 1\n1 4 1\n3 4 1\n1 3 4\n";

/// Two diamonds in series, 1-{2,3}-4-{5,6}-7 with `S = {1,7}`. Vertex 4 has
/// two incoming and two outgoing strip edges.
pub const DOUBLE_DIAMOND: &str = "7 8 2\n1 2 1\n1 3 1\n2 4 1\n3 4 1\n4 5 1\n4 6 1\n5 7 1\n6 7 1\n1 7\n";

/// Every bundled fixture with a short name.
pub const ALL: &[(&str, &str)] = &[
    ("p3", P3),
    ("two-vertex", TWO_VERTEX),
    ("c4", C4),
    ("star", STAR),
    ("k4", K4),
    ("even-cycle", EVEN_CYCLE),
    ("p3-pendant", P3_PENDANT),
    ("twin-stars", TWIN_STARS),
    ("twin-stars-heavy", TWIN_STARS_HEAVY),
    ("chain", CHAIN),
    ("c10-five", C10_FIVE),
    ("c4-three", C4_THREE),
    ("double-diamond", DOUBLE_DIAMOND),
];
