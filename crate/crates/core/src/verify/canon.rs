//! Word-level canonical codes: the least serialisation over basepoint
//! rotations, orientation reversal and label renumbering.

use crate::diagram::{ResolvedDiagram, ShadowDiagram};

fn least(len: usize, token: impl Fn(usize, &mut Vec<usize>, &mut usize) -> String) -> String {
    let mut best: Option<Vec<String>> = None;
    for reverse in [false, true] {
        for start in 0..len {
            let mut names = vec![usize::MAX; len];
            let mut next = 0;
            let seq: Vec<String> = (0..len)
                .map(|k| {
                    let p = if reverse { (start + len - k) % len } else { (start + k) % len };
                    token(p, &mut names, &mut next)
                })
                .collect();
            if best.as_ref().is_none_or(|b| seq < *b) {
                best = Some(seq);
            }
        }
    }
    best.map(|b| b.join(" ")).unwrap_or_default()
}

fn label_ids(word: &[String]) -> Vec<usize> {
    let mut labels: Vec<&String> = word.iter().collect();
    labels.sort();
    labels.dedup();
    word.iter().map(|l| labels.binary_search(&l).unwrap()).collect()
}

/// Canonical token string of a shadow's Gauss word.
pub fn canonical_code(shadow: &ShadowDiagram) -> String {
    let ids = label_ids(&shadow.word);
    least(shadow.len(), |p, names, next| {
        let id = ids[p];
        if names[id] == usize::MAX {
            names[id] = *next;
            *next += 1;
        }
        (names[id] + 1).to_string()
    })
}

/// Canonical token string of a resolved word (`O`/`U` prefixed labels).
pub fn canonical_resolved_code(resolved: &ResolvedDiagram) -> String {
    let ids = label_ids(&resolved.shadow.word);
    let flags = resolved.over_flags();
    least(resolved.shadow.len(), |p, names, next| {
        let id = ids[p];
        if names[id] == usize::MAX {
            names[id] = *next;
            *next += 1;
        }
        format!("{}{}", if flags[p] { 'O' } else { 'U' }, names[id] + 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(w: &[&str]) -> String {
        canonical_code(&ShadowDiagram::from_word(w).unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(code(&["1", "2", "1", "2"]), code(&["2", "1", "2", "1"]));
        assert_ne!(code(&["1", "1"]), code(&["1", "2", "1", "2"]));
        assert_eq!(code(&["7", "9", "7", "9"]), code(&["1", "2", "1", "2"]));
        assert_eq!(code(&[]), "");
    }
}
