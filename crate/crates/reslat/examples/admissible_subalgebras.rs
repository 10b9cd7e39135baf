//! Admissible subalgebras: filter carving on involutive chains, the
//! Brouwerian variant, punctured squares, and lifting over ordinal sums.
//!
//! ```bash
//! cargo run --example admissible_subalgebras
//! ```

use reslat::constructors::{godel_chain, two, wajsberg_chain};
use reslat::kexpansion::{
    admissible_brouwerian, admissible_from_filter, circle_plus, dense_elements, k_expand,
    lift_over_sum, punctured, recover_filter,
};
use reslat::subalgebras::{admissible_subuniverses, minimal_admissible};

fn main() -> reslat::Result<()> {
    // the K_{r,3} family: carve K(Ł_3) by each principal lattice filter
    let l3 = wajsberg_chain(3)?;
    println!("a (+) a^2 in Ł_3 = {}", l3.label(circle_plus(&l3, 2, 1)?));
    for r in 0..=3usize {
        let filter: Vec<usize> = (3 - r..=3).collect();
        let (k, s) = admissible_from_filter(&l3, &filter)?;
        let alg = s.algebra(k.algebra())?;
        println!("K_{{{r},3}} has {} elements", alg.size());
        // the filter is recoverable from the carved algebra
        let back = recover_filter(&alg)?;
        assert_eq!(back.len(), filter.len());
    }

    // exhaustive census agrees with the filter count
    let k = k_expand(&l3)?;
    let all = admissible_subuniverses(&k, 36)?;
    println!("K(Ł_3) has {} admissible subalgebras in total", all.len());

    // Brouwerian route: the minimal regular filter of G_3 carves K_8
    let g3 = godel_chain(3)?;
    let dense = dense_elements(&g3)?;
    let (kg, s) = admissible_brouwerian(&g3, &dense)?;
    println!("dense filter of G_3 carves {} of {} elements", s.len(), kg.algebra().size());

    // same algebra as the punctured square
    let (_, punct) = punctured(&g3)?;
    assert_eq!(punct.len(), s.len());

    // lifting K_3 over an ordinal sum keeps the correspondence
    let k2 = k_expand(&two()?)?;
    let s3 = minimal_admissible(&k2);
    let (k_sum, lifted) = lift_over_sum(&k2, &s3, &wajsberg_chain(2)?)?;
    println!(
        "K_3 lifted over 2 + Ł_2 gives {} of {} elements",
        lifted.len(),
        k_sum.algebra().size()
    );
    Ok(())
}
