//! Named generators and the standard verification corpus.
//!
//! Generator syntax: `polygon:M`, `simplex-boundary:N`, `cyclic-dual:N,K`,
//! `stacked:D,M,SEED`, `full-simplex:M`, and `product:(A,B)` where A and B
//! are themselves generator specs.

use crate::complex::{
    cyclic_dual, full_simplex, polygon, product_dual, simplex_boundary, stacked_sphere,
    SimplicialComplex,
};
use crate::error::{Error, Result};

pub fn parse_generator(spec: &str) -> Result<SimplicialComplex> {
    let spec = spec.trim();
    let (name, args) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("generator needs NAME:ARGS, got `{spec}`")))?;
    let args = args.trim();
    let ints = |text: &str, want: usize| -> Result<Vec<usize>> {
        let text = text.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<usize> = text
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("bad generator args `{text}`: {e}")))?;
        if parts.len() != want {
            return Err(Error::Parse(format!(
                "generator `{name}` wants {want} args, got {}",
                parts.len()
            )));
        }
        Ok(parts)
    };
    match name {
        "polygon" => polygon(ints(args, 1)?[0]),
        "simplex-boundary" => simplex_boundary(ints(args, 1)?[0]),
        "full-simplex" => full_simplex(ints(args, 1)?[0]),
        "cyclic-dual" => {
            let v = ints(args, 2)?;
            cyclic_dual(v[0], v[1])
        }
        "stacked" => {
            let v = ints(args, 3)?;
            stacked_sphere(v[0], v[1], v[2] as u64)
        }
        "product" => {
            let inner = args
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| {
                    Error::Parse(format!("product wants `(A,B)`, got `{args}`"))
                })?;
            let split = top_level_comma(inner).ok_or_else(|| {
                Error::Parse(format!("product wants two comma-separated specs in `{inner}`"))
            })?;
            let a = parse_generator(&inner[..split])?;
            let b = parse_generator(&inner[split + 1..])?;
            let name = format!(
                "product:({},{})",
                a.name().unwrap_or("?"),
                b.name().unwrap_or("?")
            );
            product_dual(&a, &b).map(|k| k.with_name(name))
        }
        other => Err(Error::Parse(format!("unknown generator `{other}`"))),
    }
}

fn top_level_comma(text: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

/// Every polytopal complex the identity and oracle-equivalence suites run
/// over: all polygons up to 9, simplex boundaries up to 5, a family of
/// products, cyclic duals in dimensions 3 and 4, and 25 seeded random
/// stacked spheres with at most 8 vertices.
pub fn standard_corpus() -> Vec<SimplicialComplex> {
    let mut corpus = Vec::new();
    for m in 3..=9 {
        corpus.push(polygon(m).expect("polygon"));
    }
    for n in 1..=5 {
        corpus.push(simplex_boundary(n).expect("simplex"));
    }
    for spec in [
        "product:(simplex-boundary:1,simplex-boundary:1)",
        "product:(simplex-boundary:1,simplex-boundary:2)",
        "product:(simplex-boundary:2,simplex-boundary:2)",
        "product:(simplex-boundary:1,simplex-boundary:3)",
        "product:(simplex-boundary:1,polygon:5)",
        "product:(polygon:4,polygon:4)",
    ] {
        corpus.push(parse_generator(spec).expect("product"));
    }
    for k in 4..=8 {
        corpus.push(cyclic_dual(3, k).expect("cyclic 3"));
    }
    for k in 5..=8 {
        corpus.push(cyclic_dual(4, k).expect("cyclic 4"));
    }
    // 25 random pure pseudomanifold-checked complexes, m <= 8
    let mut count = 0;
    let mut seed = 0u64;
    while count < 25 {
        let (d, m) = match count % 5 {
            0 => (2, 6),
            1 => (2, 7),
            2 => (2, 8),
            3 => (3, 7),
            _ => (3, 8),
        };
        corpus.push(stacked_sphere(d, m, seed).expect("stacked"));
        count += 1;
        seed += 1;
    }
    corpus
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_named_generators() {
        assert_eq!(parse_generator("polygon:5").unwrap().m(), 5);
        assert_eq!(parse_generator("simplex-boundary:3").unwrap().m(), 4);
        assert_eq!(parse_generator("cyclic-dual:3,6").unwrap().m(), 6);
        assert_eq!(parse_generator("cyclic-dual:(3,6)").unwrap().m(), 6);
        assert_eq!(parse_generator("stacked:2,7,1").unwrap().m(), 7);
        let p = parse_generator("product:(polygon:4,simplex-boundary:2)").unwrap();
        assert_eq!(p.m(), 7);
        let nested =
            parse_generator("product:(product:(simplex-boundary:1,simplex-boundary:1),polygon:3)")
                .unwrap();
        assert_eq!(nested.m(), 7);
        assert!(parse_generator("polygon").is_err());
        assert!(parse_generator("moebius:5").is_err());
        assert!(parse_generator("polygon:x").is_err());
    }

    #[test]
    fn corpus_is_large_and_polytopal() {
        let corpus = standard_corpus();
        assert!(corpus.len() >= 50, "{} items", corpus.len());
        for k in &corpus {
            assert!(k.is_polytopal(), "{:?}", k.name());
            assert!(k.m() <= 12);
        }
    }

    #[test]
    fn generators_roundtrip_through_json() {
        for spec in ["polygon:6", "cyclic-dual:3,5", "product:(polygon:4,polygon:4)"] {
            let k = parse_generator(spec).unwrap();
            let back = SimplicialComplex::from_json(&k.to_json()).unwrap();
            assert_eq!(back.facet_masks(), k.facet_masks());
            assert_eq!(back.is_polytopal(), k.is_polytopal());
        }
    }
}
