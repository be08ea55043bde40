//! Named ideals used throughout the tests and the command-line corpus.

use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub vars: Vec<String>,
    pub ideal: MonomialIdeal,
}

fn letters(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect()
}

fn indexed(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Builds an ideal from words such as `abd` or `x^4*y^2` over the given
/// variable names. Single-character names may be juxtaposed.
fn parse_words(vars: &[String], words: &[&str]) -> MonomialIdeal {
    let gens = words
        .iter()
        .map(|w| {
            let mut e = vec![0u32; vars.len()];
            let factors: Vec<String> = if w.contains('*') || w.contains('^') {
                w.split('*').map(str::to_string).collect()
            } else {
                w.chars().map(|c| c.to_string()).collect()
            };
            for f in factors {
                let (name, exp) = match f.split_once('^') {
                    Some((n, x)) => (n.to_string(), x.parse::<u32>().unwrap()),
                    None => (f.clone(), 1),
                };
                let idx = vars.iter().position(|v| *v == name).unwrap();
                e[idx] += exp;
            }
            Monomial::new(e)
        })
        .collect();
    MonomialIdeal::new(vars.len(), gens).unwrap()
}

fn fixture(name: &'static str, vars: Vec<String>, words: &[&str]) -> Fixture {
    let ideal = parse_words(&vars, words);
    Fixture { name, vars, ideal }
}

/// The seven lines of the Fano plane, in variables `a..g`.
pub fn fano() -> Fixture {
    fixture(
        "fano",
        letters(7),
        &["abd", "bce", "cdf", "aef", "acg", "deg", "bfg"],
    )
}

/// Ten squarefree cubics in `a..j`.
pub fn ten_cubics() -> Fixture {
    fixture(
        "ten-cubics",
        letters(10),
        &[
            "abc", "ade", "bdf", "cef", "agh", "bgi", "chi", "dgj", "ehj", "fij",
        ],
    )
}

/// Ten squarefree quartics in `a..j`.
pub fn ten_quartics() -> Fixture {
    fixture(
        "ten-quartics",
        letters(10),
        &[
            "cefg", "bdfh", "afgh", "adei", "begi", "cdhi", "abcj", "cdgj", "behj", "afij",
        ],
    )
}

/// Edge ideal of a triangle, `<xy, xz, yz>`.
pub fn triangle() -> Fixture {
    let vars = vec!["x".into(), "y".into(), "z".into()];
    fixture("triangle", vars, &["xy", "xz", "yz"])
}

/// Sixteen squarefree quadrics in `x1..x7` with a non-standard symbolic
/// Rees algebra.
pub fn sixteen_quadrics() -> Fixture {
    let vars = indexed("x", 7);
    let pairs: [(usize, usize); 16] = [
        (1, 2),
        (1, 3),
        (2, 3),
        (1, 4),
        (2, 4),
        (1, 5),
        (2, 5),
        (3, 5),
        (1, 6),
        (2, 6),
        (3, 6),
        (4, 6),
        (1, 7),
        (2, 7),
        (4, 7),
        (5, 7),
    ];
    let supports: Vec<Vec<usize>> = pairs.iter().map(|&(i, j)| vec![i - 1, j - 1]).collect();
    let refs: Vec<&[usize]> = supports.iter().map(Vec::as_slice).collect();
    Fixture {
        name: "sixteen-quadrics",
        ideal: MonomialIdeal::from_supports(7, &refs).unwrap(),
        vars,
    }
}

/// Edge ideal of three disjoint triangles in `a..i`.
pub fn three_triangles() -> Fixture {
    fixture(
        "three-triangles",
        letters(9),
        &["ab", "ac", "bc", "de", "df", "ef", "gh", "gi", "hi"],
    )
}

/// `∩_{i<j} <x_i, x_j>` in `x1..xl`: products of all but one variable.
pub fn pair_intersection(l: usize) -> Fixture {
    let supports: Vec<Vec<usize>> = (0..l)
        .map(|skip| (0..l).filter(|&i| i != skip).collect())
        .collect();
    let refs: Vec<&[usize]> = supports.iter().map(Vec::as_slice).collect();
    let name = match l {
        3 => "pair-intersection-3",
        4 => "pair-intersection-4",
        5 => "pair-intersection-5",
        _ => "pair-intersection",
    };
    Fixture {
        name,
        vars: indexed("x", l),
        ideal: MonomialIdeal::from_supports(l, &refs).unwrap(),
    }
}

/// The non-radical ideal `<x^4y^2, x^3y^3, x^4z, y^3z^2>`.
pub fn nonradical() -> Fixture {
    let vars = vec!["x".into(), "y".into(), "z".into()];
    fixture(
        "nonradical",
        vars,
        &["x^4*y^2", "x^3*y^3", "x^4*z", "y^3*z^2"],
    )
}

/// Primary components `<x^4,y^3>, <x^3,z^2>, <y^2,z>` of [`nonradical`].
pub fn nonradical_components() -> Vec<MonomialIdeal> {
    let vars: Vec<String> = vec!["x".into(), "y".into(), "z".into()];
    vec![
        parse_words(&vars, &["x^4", "y^3"]),
        parse_words(&vars, &["x^3", "z^2"]),
        parse_words(&vars, &["y^2", "z"]),
    ]
}

/// `<abd, ace, bcf, def>` in `a..f`.
pub fn four_cubics() -> Fixture {
    fixture("four-cubics", letters(6), &["abd", "ace", "bcf", "def"])
}

/// The pair `I = <x^2z, yz, y^2>`, `J = <x, z^2>`.
pub fn bracket_pair() -> (MonomialIdeal, MonomialIdeal) {
    let vars: Vec<String> = vec!["x".into(), "y".into(), "z".into()];
    (
        parse_words(&vars, &["x^2*z", "yz", "y^2"]),
        parse_words(&vars, &["x", "z^2"]),
    )
}

/// Edge ideal of the 5-cycle.
pub fn pentagon() -> Fixture {
    fixture("pentagon", letters(5), &["ab", "bc", "cd", "de", "ae"])
}

/// `<x, y>`.
pub fn complete_intersection() -> Fixture {
    let vars = vec!["x".into(), "y".into()];
    fixture("complete-intersection", vars, &["x", "y"])
}

/// `<x>`.
pub fn principal() -> Fixture {
    let vars = vec!["x".into()];
    fixture("principal", vars, &["x"])
}

pub fn all() -> Vec<Fixture> {
    vec![
        fano(),
        ten_cubics(),
        ten_quartics(),
        triangle(),
        sixteen_quadrics(),
        three_triangles(),
        pair_intersection(3),
        pair_intersection(4),
        pair_intersection(5),
        nonradical(),
        four_cubics(),
        pentagon(),
        complete_intersection(),
        principal(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_counts() {
        assert_eq!(fano().ideal.len(), 7);
        assert_eq!(ten_cubics().ideal.len(), 10);
        assert_eq!(ten_quartics().ideal.len(), 10);
        assert_eq!(sixteen_quadrics().ideal.len(), 16);
        assert_eq!(pair_intersection(4).ideal.len(), 4);
        let (i, _) = bracket_pair();
        assert_eq!(i.len(), 3);
    }

    #[test]
    fn words_with_powers() {
        let f = nonradical();
        assert_eq!(f.ideal.gens()[0].exponents(), &[0, 3, 2]);
    }
}
