//! Filters, congruences, quotients, and the transfer between a K-lattice
//! and its negative cone.
//!
//! ```bash
//! cargo run --example congruence_lattices
//! ```

use reslat::congruences::{
    congruence_filters, congruence_lattice, is_simple, is_subdirectly_irreducible, lattice_filters,
    quotient, theta_from_filter,
};
use reslat::constructors::{godel_chain, ordinal_sum, two, wajsberg_chain};
use reslat::kexpansion::{k_expand, negative_cone};

fn main() -> reslat::Result<()> {
    let g3 = godel_chain(3)?;
    println!("G_3 congruence filters: {}", congruence_filters(&g3)?.len());
    println!("Ł_3 lattice filters: {}", lattice_filters(&wajsberg_chain(3)?)?.len());

    // quotient by the filter {a, 1}
    let theta = theta_from_filter(&g3, &[1, 2])?;
    let q = quotient(&g3, &theta)?;
    println!("G_3 / {{a,1}} has {} elements", q.size());

    for n in 1..=4 {
        println!("Ł_{n} is simple: {}", is_simple(&wajsberg_chain(n)?)?);
    }
    println!("G_3 is SI but not simple: {} / {}", is_subdirectly_irreducible(&g3)?, is_simple(&g3)?);

    // congruences of a twist-product match those of its cone
    let sum = ordinal_sum(&two()?, &wajsberg_chain(2)?)?;
    let k = k_expand(&sum)?;
    let lat = congruence_lattice(k.algebra())?;
    let cone_lat = congruence_lattice(&negative_cone(k.algebra()))?;
    println!(
        "Con K(2+Ł_2) has {} members, Con of its cone {}; isomorphic: {}",
        lat.len(),
        cone_lat.len(),
        lat.isomorphic_to(&cone_lat)
    );
    Ok(())
}
