//! Canonical small atlases shipped with the repository (`fixtures/*.atlas`).

use crate::atlas::StripedAtlas;

pub const PLANE: &str = include_str!("../../../fixtures/plane.atlas");
pub const HALFPLANE: &str = include_str!("../../../fixtures/halfplane.atlas");
pub const CYL: &str = include_str!("../../../fixtures/cyl.atlas");
pub const MOEB: &str = include_str!("../../../fixtures/moeb.atlas");
pub const SAMESIDE: &str = include_str!("../../../fixtures/sameside.atlas");
pub const PUNCTURED: &str = include_str!("../../../fixtures/punctured.atlas");
pub const LADDER: &str = include_str!("../../../fixtures/ladder.atlas");

pub const ALL: [(&str, &str); 7] = [
    ("PLANE", PLANE),
    ("HALFPLANE", HALFPLANE),
    ("CYL", CYL),
    ("MOEB", MOEB),
    ("SAMESIDE", SAMESIDE),
    ("PUNCTURED", PUNCTURED),
    ("LADDER", LADDER),
];

pub fn parse(text: &str) -> StripedAtlas {
    crate::format::parse_atlas(text).expect("fixture is valid")
}

pub fn by_name(name: &str) -> Option<StripedAtlas> {
    ALL.iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, t)| parse(t))
}

pub fn all() -> Vec<(&'static str, StripedAtlas)> {
    ALL.iter().map(|(n, t)| (*n, parse(t))).collect()
}

pub fn plane() -> StripedAtlas {
    parse(PLANE)
}
pub fn halfplane() -> StripedAtlas {
    parse(HALFPLANE)
}
pub fn cyl() -> StripedAtlas {
    parse(CYL)
}
pub fn moeb() -> StripedAtlas {
    parse(MOEB)
}
pub fn sameside() -> StripedAtlas {
    parse(SAMESIDE)
}
pub fn punctured() -> StripedAtlas {
    parse(PUNCTURED)
}
pub fn ladder() -> StripedAtlas {
    parse(LADDER)
}
