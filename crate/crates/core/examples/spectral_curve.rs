//! Characteristic polynomial, its tropicalization and the curve it cuts out.

use tropbbs::bbs::BbsState;
use tropbbs::curve::CurveData;
use tropbbs::rational::fmt_rat;
use tropbbs::spectral::newton_check;

fn main() -> tropbbs::Result<()> {
    let s = BbsState::from_ints(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 0], &[2, 0, 0]], 1)?;
    let c = CurveData::new(&s)?;
    println!("exact polynomial (c i j k for c x^i y^j q^k):\n{}", c.spectral.charpoly_exact.to_text());
    println!("tropical coefficients (i j c):\n{}", c.spectral.charpoly_trop.to_text());
    println!("newton check ok: {}", newton_check(&c.spectral).ok);
    for (k, (x, y)) in c.locus.vertices.iter().enumerate() {
        println!("vertex {k}: ({}, {})", fmt_rat(x), fmt_rat(y));
    }
    for e in &c.locus.edges {
        println!("edge {} - {}: weight {}, length {}", e.a, e.b, e.weight, fmt_rat(&e.length));
    }
    println!("balanced: {}, genus: {}", c.locus.is_balanced(), c.graph.genus());
    Ok(())
}
