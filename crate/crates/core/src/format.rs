//! Line-oriented atlas text format.
//!
//! ```text
//! strip <name>
//! side0 <id> <id> ...
//! side1 <id> ...
//! glue <id> <id> +|-
//! ```
//!
//! `#` starts a comment. Side lines bind to the most recent `strip` line.

use std::fmt::Write as _;

use thiserror::Error;

use crate::atlas::{validate, AtlasDraft, DraftGluing, DraftStrip, Parity, StripedAtlas, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtlasError {
    #[error("syntax error at {0}")]
    Syntax(#[from] SyntaxError),
    #[error("invalid atlas: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

impl AtlasError {
    pub fn violations(&self) -> &[Violation] {
        match self {
            AtlasError::Invalid(v) => v,
            AtlasError::Syntax(_) => &[],
        }
    }
}

pub fn parse_draft(text: &str) -> Result<AtlasDraft, SyntaxError> {
    let mut draft = AtlasDraft::default();
    let mut seen_side = [false, false];
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let err = |message: String| SyntaxError { line, message };
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&keyword, args)) = tokens.split_first() else {
            continue;
        };
        match keyword {
            "strip" => {
                let [name] = args else {
                    return Err(err(format!("`strip` takes one name, got {}", args.len())));
                };
                draft.strips.push(DraftStrip {
                    name: name.to_string(),
                    ..Default::default()
                });
                seen_side = [false, false];
            }
            "side0" | "side1" => {
                let which = usize::from(keyword == "side1");
                let Some(strip) = draft.strips.last_mut() else {
                    return Err(err(format!("`{keyword}` before any `strip` line")));
                };
                if seen_side[which] {
                    return Err(err(format!("`{keyword}` given twice for strip {}", strip.name)));
                }
                seen_side[which] = true;
                let list = args.iter().map(|s| s.to_string()).collect();
                if which == 0 {
                    strip.side0 = list;
                } else {
                    strip.side1 = list;
                }
            }
            "glue" => {
                let [a, b, p] = args else {
                    return Err(err("`glue` takes two interval ids and a parity".into()));
                };
                let parity = Parity::from_symbol(p)
                    .ok_or_else(|| err(format!("parity must be `+` or `-`, got `{p}`")))?;
                draft.gluings.push(DraftGluing {
                    a: a.to_string(),
                    b: b.to_string(),
                    parity,
                });
            }
            other => return Err(err(format!("unknown keyword `{other}`"))),
        }
    }
    Ok(draft)
}

pub fn parse_atlas(text: &str) -> Result<StripedAtlas, AtlasError> {
    let draft = parse_draft(text)?;
    validate(&draft).map_err(AtlasError::Invalid)
}

pub fn draft_to_text(draft: &AtlasDraft) -> String {
    let mut out = String::new();
    for s in &draft.strips {
        writeln!(out, "strip {}", s.name).unwrap();
        for (kw, list) in [("side0", &s.side0), ("side1", &s.side1)] {
            if !list.is_empty() {
                writeln!(out, "{kw} {}", list.join(" ")).unwrap();
            }
        }
    }
    for g in &draft.gluings {
        writeln!(out, "glue {} {} {}", g.a, g.b, g.parity).unwrap();
    }
    out
}

pub fn to_text(atlas: &StripedAtlas) -> String {
    draft_to_text(&atlas.to_draft())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn fixture_counts() {
        let cyl = parse_atlas(fixtures::CYL).unwrap();
        assert_eq!((cyl.strip_count(), cyl.interval_count(), cyl.gluings().len()), (1, 2, 1));
        let plane = parse_atlas(fixtures::PLANE).unwrap();
        assert_eq!((plane.strip_count(), plane.interval_count(), plane.gluings().len()), (1, 0, 0));
    }

    #[test]
    fn self_gluing_rejected() {
        let e = parse_atlas("strip S\nside0 a\nglue a a +\n").unwrap_err();
        assert_eq!(e.violations(), &[Violation::SelfGluing("a".into())]);
        assert!(e.to_string().contains("interval glued to itself"));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let e = parse_draft("# header\nstrip S\nside0 a\nglue a b *\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert_eq!(parse_draft("side0 a\n").unwrap_err().line, 1);
        assert_eq!(parse_draft("strip\n").unwrap_err().line, 1);
        assert_eq!(parse_draft("strip S\n\nfoo bar\n").unwrap_err().line, 3);
        assert_eq!(parse_draft("strip S\nside1 a\nside1 b\n").unwrap_err().line, 3);
    }

    #[test]
    fn comments_and_blank_lines() {
        let a = parse_atlas("strip S   # the strip\n\n  side0 a b # two\nglue a b -\n").unwrap();
        assert_eq!(a.interval_name(a.side(crate::atlas::StripId(0), crate::atlas::Side::Zero)[1]), "b");
        assert_eq!(a.gluings()[0].parity, Parity::Decreasing);
    }

    #[test]
    fn identifiers_preserved_verbatim() {
        let a = parse_atlas("strip Strip-1\nside1 x.0 y/1\nglue x.0 y/1 +\n").unwrap();
        assert_eq!(a.strips()[0].name, "Strip-1");
        assert_eq!(to_text(&a), "strip Strip-1\nside1 x.0 y/1\nglue x.0 y/1 +\n");
    }

    proptest! {
        #[test]
        fn text_round_trip(strips in 1usize..5, ints in 0usize..4, seed in any::<u64>()) {
            let cfg = crate::random::RandomAtlasConfig::new(strips, ints);
            let atlas = crate::random::random_atlas(&cfg, seed);
            let text = to_text(&atlas);
            prop_assert_eq!(parse_atlas(&text).unwrap(), atlas);
        }
    }
}
