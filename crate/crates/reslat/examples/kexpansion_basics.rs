//! Twist-products, negative cones, K-lattice recognition and the
//! canonical embedding.
//!
//! ```bash
//! cargo run --example kexpansion_basics
//! ```

use reslat::constructors::{godel_chain, two};
use reslat::kexpansion::{canonical_embedding, is_k_lattice, k_expand, negative_cone};
use reslat::subalgebras::is_isomorphic;

fn main() -> reslat::Result<()> {
    let base = two()?;
    let k4 = k_expand(&base)?;
    println!("K(2) on pairs: size {}", k4.algebra().size());
    for i in k4.algebra().elements() {
        let (a, b) = k4.pair_of(i);
        println!("  {} decodes to ({a},{b})", k4.algebra().label(i));
    }
    println!("K(2) is a K-lattice: {}", is_k_lattice(k4.algebra()));
    println!("2 itself is one: {} (integral, so 1-involutivity fails)", is_k_lattice(&base));

    // the cone comes back
    let cone = negative_cone(k4.algebra());
    println!("cone of K(2) is 2 again: {}", is_isomorphic(&cone, &base).is_some());

    // a K-lattice embeds into the twist-product of its cone
    let k9 = k_expand(&godel_chain(3)?)?;
    let (target, map) = canonical_embedding(k9.algebra())?;
    println!(
        "K(G_3) embeds into K(K(G_3)^-) covering {} of {} elements",
        map.len(),
        target.algebra().size()
    );
    Ok(())
}
