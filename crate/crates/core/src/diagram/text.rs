//! Line-oriented text formats.
//!
//! A document holds at most one word line plus optional directives:
//!
//! ```text
//! # comment
//! 1 2 3 1 2 3          unsigned word (shadow) or O/U-prefixed tokens (resolved)
//! basepoint 2          gap index, omitted when 0
//! P 1 4 2 5            shadow planar tuple
//! X 1 5 2 4            resolved planar tuple, first slot = incoming under edge
//! ```
//!
//! Planar lines without a word line are read as a bare planar code: the
//! traversal is reconstructed and crossings are labelled `1..=n` in order
//! of first visit.

use super::planar::{self, traverse_tuples, Traversal};
use super::{Resolution, ResolvedDiagram, ShadowDiagram};
use crate::error::{Error, Result};

#[derive(Default)]
struct Document {
    word: Option<Vec<String>>,
    basepoint: Option<usize>,
    shadow_tuples: Vec<[i64; 4]>,
    resolved_tuples: Vec<[i64; 4]>,
}

fn parse_int(tok: &str) -> Result<i64> {
    tok.parse::<i64>().map_err(|_| Error::BadToken(tok.to_string()))
}

fn parse_tuple(tokens: &[&str]) -> Result<[i64; 4]> {
    if tokens.len() != 4 {
        return Err(Error::Format(format!("planar tuple needs 4 edges, got {}", tokens.len())));
    }
    Ok([parse_int(tokens[0])?, parse_int(tokens[1])?, parse_int(tokens[2])?, parse_int(tokens[3])?])
}

fn read_document(text: &str) -> Result<Document> {
    let mut doc = Document::default();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "P" => doc.shadow_tuples.push(parse_tuple(&tokens[1..])?),
            "X" => doc.resolved_tuples.push(parse_tuple(&tokens[1..])?),
            "basepoint" if tokens.len() == 2 => {
                let b = tokens[1].parse().map_err(|_| Error::BadToken(tokens[1].to_string()))?;
                doc.basepoint = Some(b);
            }
            _ => {
                if doc.word.is_some() {
                    return Err(Error::Format("more than one word line".into()));
                }
                doc.word = Some(tokens.iter().map(|t| t.to_string()).collect());
            }
        }
    }
    Ok(doc)
}

fn to_u32(tuples: &[[i64; 4]]) -> Result<Vec<[u32; 4]>> {
    tuples
        .iter()
        .map(|t| {
            let mut out = [0u32; 4];
            for (o, &e) in out.iter_mut().zip(t) {
                *o = u32::try_from(e).map_err(|_| Error::BadToken(e.to_string()))?;
            }
            Ok(out)
        })
        .collect()
}

fn shadow_from_traversal(t: &Traversal) -> ShadowDiagram {
    let word: Vec<String> = t.word.iter().map(|c| (c + 1).to_string()).collect();
    let mut d = ShadowDiagram { word, planar: None, basepoint: 0 };
    let signs: Vec<i8> = (0..t.entries.len()).map(|c| t.first_over_sign(c)).collect();
    d.planar = Some(d.tuples_from_signs(&signs));
    d
}

/// Reads an unsigned Gauss word. Whitespace-only text is the 0-crossing
/// loop. The basepoint is gap 0 unless `basepoint` overrides it.
pub fn parse_gauss_shadow(text: &str, basepoint: Option<usize>) -> Result<ShadowDiagram> {
    let word: Vec<String> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.starts_with('#'))
        .flat_map(str::split_whitespace)
        .map(str::to_string)
        .collect();
    ShadowDiagram::new(word, None, basepoint.unwrap_or(0))
}

/// Reads a shadow planar code, one crossing per line (`P a b c d`; the
/// leading `P` is optional).
pub fn parse_pd_shadow(text: &str) -> Result<ShadowDiagram> {
    let mut tuples = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let body = if tokens[0] == "P" { &tokens[1..] } else { &tokens[..] };
        tuples.push(parse_tuple(body)?);
    }
    if tuples.is_empty() {
        return Ok(ShadowDiagram::empty());
    }
    let (_, traversal) = traverse_tuples(&tuples)?;
    Ok(shadow_from_traversal(&traversal))
}

/// Reads a full shadow document (word, basepoint, planar lines).
pub fn parse_shadow(text: &str) -> Result<ShadowDiagram> {
    let doc = read_document(text)?;
    if !doc.resolved_tuples.is_empty() {
        return Err(Error::Format("resolved planar tuples in a shadow document".into()));
    }
    let basepoint = doc.basepoint.unwrap_or(0);
    match doc.word {
        Some(word) => {
            let planar = if doc.shadow_tuples.is_empty() { None } else { Some(to_u32(&doc.shadow_tuples)?) };
            ShadowDiagram::new(word, planar, basepoint)
        }
        None if doc.shadow_tuples.is_empty() => ShadowDiagram::new(vec![], None, basepoint),
        None => {
            let (_, traversal) = traverse_tuples(&doc.shadow_tuples)?;
            let mut d = shadow_from_traversal(&traversal);
            d.basepoint = basepoint;
            d.check()?;
            Ok(d)
        }
    }
}

fn split_token(tok: &str) -> Result<(bool, String)> {
    let (over, rest) = match tok.as_bytes().first() {
        Some(b'O') => (true, &tok[1..]),
        Some(b'U') => (false, &tok[1..]),
        _ => return Err(Error::BadToken(tok.to_string())),
    };
    if rest.is_empty() {
        return Err(Error::BadToken(tok.to_string()));
    }
    Ok((over, rest.to_string()))
}

/// Reads a resolved document: O/U-prefixed tokens with optional basepoint
/// and `X` lines, or `X` lines alone.
pub fn parse_resolved(text: &str) -> Result<ResolvedDiagram> {
    let doc = read_document(text)?;
    if !doc.shadow_tuples.is_empty() {
        return Err(Error::Format("shadow planar tuples in a resolved document".into()));
    }
    let basepoint = doc.basepoint.unwrap_or(0);
    let Some(tokens) = doc.word else {
        let mut d = if doc.resolved_tuples.is_empty() {
            ResolvedDiagram { shadow: ShadowDiagram::empty(), resolution: Resolution::new() }
        } else {
            resolved_from_tuples(&doc.resolved_tuples)?
        };
        d.shadow.basepoint = basepoint;
        return ResolvedDiagram::new(d.shadow, d.resolution);
    };
    let mut word = Vec::with_capacity(tokens.len());
    let mut resolution = Resolution::new();
    let mut overs: Vec<(String, bool)> = Vec::new();
    for (p, tok) in tokens.iter().enumerate() {
        let (over, label) = split_token(tok)?;
        if over {
            resolution.set(&label, p);
        }
        overs.push((label.clone(), over));
        word.push(label);
    }
    let shadow = ShadowDiagram::new(word, None, basepoint)?;
    for c in shadow.crossings() {
        if overs[c.first].1 == overs[c.second].1 {
            return Err(Error::InvalidDiagram(format!(
                "crossing {} needs exactly one O and one U pass",
                c.label
            )));
        }
    }
    let mut d = ResolvedDiagram { shadow, resolution };
    if !doc.resolved_tuples.is_empty() {
        let tuples = to_u32(&doc.resolved_tuples)?;
        attach_resolved_tuples(&mut d, &tuples)?;
    }
    ResolvedDiagram::new(d.shadow, d.resolution)
}

/// Reads a resolved planar code alone (`X a b c d` lines, `X` optional).
pub fn parse_pd_resolved(text: &str) -> Result<ResolvedDiagram> {
    let mut tuples = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let body = if tokens[0] == "X" { &tokens[1..] } else { &tokens[..] };
        tuples.push(parse_tuple(body)?);
    }
    if tuples.is_empty() {
        return Ok(ResolvedDiagram { shadow: ShadowDiagram::empty(), resolution: Resolution::new() });
    }
    resolved_from_tuples(&tuples)
}

fn resolved_from_tuples(tuples: &[[i64; 4]]) -> Result<ResolvedDiagram> {
    let (_, traversal) = traverse_tuples(tuples)?;
    let shadow = shadow_from_traversal(&traversal);
    let len = shadow.len();
    let mut positions = vec![Vec::new(); traversal.entries.len()];
    for (p, &c) in traversal.word.iter().enumerate() {
        positions[c].push(p);
    }
    let mut resolution = Resolution::new();
    let mut first_signs = Vec::with_capacity(positions.len());
    for (c, ps) in positions.iter().enumerate() {
        let (under_pass, sign) = traversal.sign_with_under_at_even_slots(c);
        let over_pass = 1 - under_pass;
        resolution.set(&(c + 1).to_string(), ps[over_pass]);
        first_signs.push(if over_pass == 0 { sign } else { -sign });
    }
    let mut shadow = shadow;
    shadow.planar = Some(shadow.tuples_from_signs(&first_signs));
    debug_assert_eq!(shadow.len(), len);
    ResolvedDiagram::new(shadow, resolution)
}

fn attach_resolved_tuples(d: &mut ResolvedDiagram, tuples: &[[u32; 4]]) -> Result<()> {
    let len = d.shadow.len();
    let crossings = d.shadow.crossings();
    if tuples.len() != crossings.len() {
        return Err(Error::InvalidDiagram(format!(
            "planar code has {} crossings, word has {}",
            tuples.len(),
            crossings.len()
        )));
    }
    let mut first_signs = Vec::with_capacity(crossings.len());
    for (c, t) in crossings.iter().zip(tuples) {
        let over = d.resolution.over_position(&c.label).unwrap_or(c.first);
        let under = c.other(over);
        let sign = [1i8, -1]
            .into_iter()
            .find(|&s| planar::resolved_tuple(under, over, len, s) == *t)
            .ok_or_else(|| {
                Error::InvalidDiagram(format!("planar tuple for crossing {} disagrees with the word", c.label))
            })?;
        first_signs.push(if over == c.first { sign } else { -sign });
    }
    d.shadow.planar = Some(d.shadow.tuples_from_signs(&first_signs));
    Ok(())
}

fn join_tuple(prefix: char, t: &[u32; 4]) -> String {
    format!("{prefix} {} {} {} {}", t[0], t[1], t[2], t[3])
}

pub(super) fn serialize_shadow(d: &ShadowDiagram) -> String {
    let mut lines = Vec::new();
    if !d.word.is_empty() {
        lines.push(d.word.join(" "));
    }
    if d.basepoint != 0 {
        lines.push(format!("basepoint {}", d.basepoint));
    }
    if let Some(planar) = &d.planar {
        lines.extend(planar.iter().map(|t| join_tuple('P', t)));
    }
    lines.join("\n")
}

pub(super) fn serialize_resolved(d: &ResolvedDiagram) -> String {
    let flags = d.over_flags();
    let mut lines = Vec::new();
    if !d.shadow.word.is_empty() {
        let tokens: Vec<String> = d
            .shadow
            .word
            .iter()
            .zip(&flags)
            .map(|(l, &o)| format!("{}{l}", if o { 'O' } else { 'U' }))
            .collect();
        lines.push(tokens.join(" "));
    }
    if d.shadow.basepoint != 0 {
        lines.push(format!("basepoint {}", d.shadow.basepoint));
    }
    if let Some(signs) = d.signs() {
        let len = d.shadow.len();
        for (c, s) in d.shadow.crossings().iter().zip(signs) {
            let over = d.resolution.over_position(&c.label).unwrap_or(c.first);
            lines.push(join_tuple('X', &planar::resolved_tuple(c.other(over), over, len, s)));
        }
    }
    lines.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL_X: &str = "X 1 5 2 4\nX 3 1 4 6\nX 5 3 6 2";

    #[test]
    fn gauss_examples() {
        let d = parse_gauss_shadow("1 2 1 2", None).unwrap();
        assert_eq!(d.word, ["1", "2", "1", "2"]);
        assert_eq!(d.basepoint, 0);
        assert_eq!(parse_gauss_shadow("   ", None).unwrap().crossing_count(), 0);
        let err = parse_gauss_shadow("1 2 1", None).unwrap_err();
        assert_eq!(err, Error::MalformedWord { label: "2".into(), count: 1 });
        assert_eq!(parse_gauss_shadow("1 2 1 2", Some(3)).unwrap().basepoint, 3);
    }

    #[test]
    fn pd_examples() {
        // Trefoil with over/under stripped: rotate each X tuple so it starts
        // at the incoming edge of the earlier pass.
        let d = parse_pd_shadow("P 1 5 2 4\nP 3 1 4 6\nP 5 3 6 2").unwrap();
        assert_eq!(d.word, ["1", "2", "3", "1", "2", "3"]);
        assert!(d.validate().is_empty());
        let kink = parse_pd_shadow("P 1 2 2 1").unwrap();
        assert_eq!(kink.word, ["1", "1"]);
        let err = parse_pd_shadow("P 1 2 3 4\nP 1 2 3 5").unwrap_err();
        assert_eq!(err.name(), "InconsistentEdges");
    }

    #[test]
    fn serialize_examples() {
        let kink = parse_gauss_shadow("1 1", None).unwrap();
        assert_eq!(kink.to_string(), "1 1");
        assert_eq!(parse_shadow(&kink.to_string()).unwrap(), kink);
        assert_eq!(ShadowDiagram::empty().to_string(), "");
        assert_eq!(parse_shadow("").unwrap(), ShadowDiagram::empty());
    }

    #[test]
    fn resolved_tokens_round_trip() {
        let d = parse_resolved("O1 O2 O3 U1 U2 U3").unwrap();
        assert_eq!(d.to_string(), "O1 O2 O3 U1 U2 U3");
        assert_eq!(parse_resolved(&d.to_string()).unwrap(), d);
    }

    #[test]
    fn resolved_pd_reads_signs_and_round_trips() {
        let d = parse_pd_resolved(TREFOIL_X).unwrap();
        assert_eq!(d.to_string().lines().next().unwrap(), "U1 O2 U3 O1 U2 O3");
        assert_eq!(d.signs().unwrap(), vec![1, 1, 1]);
        let again = parse_resolved(&d.to_string()).unwrap();
        assert_eq!(again, d);
        assert!(d.to_string().contains("X 1 5 2 4"));
    }

    #[test]
    fn bad_tokens() {
        assert_eq!(parse_resolved("A1 U1").unwrap_err().name(), "BadToken");
        assert_eq!(parse_resolved("O1 O1").unwrap_err().name(), "InvalidDiagram");
        assert_eq!(parse_pd_shadow("P 1 2 x 4").unwrap_err().name(), "BadToken");
    }

    #[test]
    fn basepoint_round_trips() {
        let d = parse_gauss_shadow("a b a b", Some(2)).unwrap();
        let text = d.to_string();
        assert_eq!(text, "a b a b\nbasepoint 2");
        assert_eq!(parse_shadow(&text).unwrap(), d);
    }
}
