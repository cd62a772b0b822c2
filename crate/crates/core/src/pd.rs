//! Planar-diagram code export and import.
//!
//! `PD[X[i,j,k,l],...]` lists each crossing's four edge labels
//! counterclockwise, starting from the incoming lower strand. Labels are
//! assigned 1, 2, ... along each component in traversal order. An optional
//! second line `exterior <crossing> <position>` names the unbounded face as
//! the corner after the given tuple position of the given crossing
//! (0-based). Crossing-free components are reported in a `#` comment.

use crate::diagram::{vertex, LinkDiagram};
use crate::error::{Error, Result};

pub fn to_pd(d: &LinkDiagram) -> String {
    let n = d.crossing_count();
    let mut label = vec![0usize; 4 * n];
    let mut arrives = vec![false; 4 * n];
    let mut next = 1;
    for comp in d.strands() {
        for h in comp {
            let t = d.twin(h);
            label[h] = next;
            label[t] = next;
            arrives[t] = true;
            next += 1;
        }
    }
    let mut start = vec![0usize; n];
    let mut tuples = Vec::with_capacity(n);
    for v in 0..n {
        let s = (0..4).find(|&i| arrives[4 * v + i] && !d.is_over(4 * v + i)).expect("incoming under strand");
        start[v] = s;
        let l: Vec<String> = (0..4).map(|p| label[4 * v + (s + p) % 4].to_string()).collect();
        tuples.push(format!("X[{}]", l.join(",")));
    }
    let mut out = format!("PD[{}]\n", tuples.join(","));
    if let Some(h) = d.exterior_half_edge() {
        let v = vertex(h);
        out.push_str(&format!("exterior {} {}\n", v, (h % 4 + 4 - start[v]) % 4));
    }
    if !d.free_loops().is_empty() {
        out.push_str(&format!("# free loops: {}\n", d.free_loops().len()));
    }
    out
}

pub fn from_pd(text: &str) -> Result<LinkDiagram> {
    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.trim().starts_with('#'));
    let (_, first) = lines.next().ok_or_else(|| perr(1, "empty input".into()))?;
    let body = first
        .trim()
        .strip_prefix("PD[")
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| perr(1, "expected PD[...]".into()))?;
    let mut tuples: Vec<[usize; 4]> = Vec::new();
    for part in body.split("X[").skip(1) {
        let inner = part.split(']').next().unwrap_or("");
        let v: Vec<usize> = inner
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| perr(1, format!("bad crossing X[{inner}]")))?;
        if v.len() != 4 {
            return Err(perr(1, format!("crossing X[{inner}] needs four labels")));
        }
        tuples.push([v[0], v[1], v[2], v[3]]);
    }
    if tuples.is_empty() {
        return Ok(LinkDiagram::empty());
    }
    let n = tuples.len();
    let mut seen: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
    for (v, t) in tuples.iter().enumerate() {
        for (i, &l) in t.iter().enumerate() {
            seen.entry(l).or_default().push(4 * v + i);
        }
    }
    let mut twin = vec![0; 4 * n];
    for (l, hs) in &seen {
        if hs.len() != 2 {
            return Err(perr(1, format!("label {l} occurs {} times", hs.len())));
        }
        twin[hs[0]] = hs[1];
        twin[hs[1]] = hs[0];
    }
    let over02 = vec![false; n];
    let mut marked = None;
    for (i, l) in lines {
        let w: Vec<&str> = l.split_whitespace().collect();
        match w.as_slice() {
            ["exterior", v, p] => {
                let v: usize = v.parse().map_err(|_| perr(i + 1, "bad crossing index".into()))?;
                let p: usize = p.parse().map_err(|_| perr(i + 1, "bad position".into()))?;
                if v >= n || p >= 4 {
                    return Err(perr(i + 1, "exterior corner out of range".into()));
                }
                marked = Some(4 * v + p);
            }
            _ => return Err(perr(i + 1, format!("unexpected line `{l}`"))),
        }
    }
    let d = LinkDiagram::from_map(twin, over02, marked.unwrap_or(0))?;
    if marked.is_some() {
        return Ok(d);
    }
    // no plane data: take a face of maximal degree as unbounded
    let best = (0..d.face_count()).max_by_key(|&f| (d.face_degree(f), std::cmp::Reverse(f))).expect("faces");
    Ok(d.with_exterior(best))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]";

    #[test]
    fn trefoil() {
        let d = from_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.face_count(), 5);
        assert!(d.is_alternating());
        assert!(d.is_reduced());
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.exterior_degree(), 3);
    }

    #[test]
    fn export_has_one_tuple_per_crossing() {
        let d = from_pd(TREFOIL).unwrap();
        let text = to_pd(&d);
        assert_eq!(text.matches("X[").count(), 3);
        let back = from_pd(&text).unwrap();
        assert_eq!(back.crossing_count(), 3);
        assert_eq!(back.exterior_degree(), d.exterior_degree());
    }

    #[test]
    fn hopf_link() {
        let d = from_pd("PD[X[4,1,3,2],X[2,3,1,4]]").unwrap();
        assert_eq!(d.component_count(), 2);
        assert!(d.is_alternating());
        assert_eq!(d.face_count(), 4);
    }

    #[test]
    fn empty_and_errors() {
        assert_eq!(from_pd("PD[]").unwrap().crossing_count(), 0);
        assert!(to_pd(&LinkDiagram::empty()).starts_with("PD[]"));
        assert!(from_pd("PD[X[1,2,3]]").is_err());
        assert!(from_pd("PD[X[1,2,3,4]]").is_err());
        assert!(from_pd("hello").is_err());
    }
}
