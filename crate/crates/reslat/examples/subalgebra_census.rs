//! Subuniverse generation and enumeration, isomorphism classes, and
//! tightness.
//!
//! ```bash
//! cargo run --example subalgebra_census
//! ```

use reslat::constructors::{c5, godel_chain, wajsberg_chain};
use reslat::kexpansion::k_expand;
use reslat::subalgebras::{
    all_subuniverses, embeds_into, generated, is_isomorphic, is_tight, subalgebras_up_to_iso,
};

fn main() -> reslat::Result<()> {
    let k9 = k_expand(&godel_chain(3)?)?.into_algebra();
    println!("subuniverses of K(G_3):");
    for s in all_subuniverses(&k9, 16)? {
        let labels: Vec<String> = s.elements.iter().map(|&x| k9.label(x)).collect();
        println!("  {{{}}}", labels.join(", "));
    }
    let classes = subalgebras_up_to_iso(&k9, 16)?;
    println!(
        "up to isomorphism: {:?}",
        classes.iter().map(|a| a.size()).collect::<Vec<_>>()
    );

    // one generator can reach everything
    let l4 = wajsberg_chain(4)?;
    println!("Ł_4 = <a>: {}", generated(&l4, &[l4.size() - 2]).len() == l4.size());

    // embedding order on Wajsberg chains is divisibility
    for (n, m) in [(2usize, 4usize), (2, 6), (3, 6), (2, 3), (4, 6)] {
        println!("Ł_{n} <= Ł_{m}: {}", embeds_into(&wajsberg_chain(n)?, &wajsberg_chain(m)?, 16)?);
    }

    // tightness: prime Wajsberg chains and the five-element search result
    for (name, alg) in [
        ("Ł_2", wajsberg_chain(2)?),
        ("Ł_3", wajsberg_chain(3)?),
        ("Ł_4", wajsberg_chain(4)?),
        ("C_5", c5()?),
        ("G_3", godel_chain(3)?),
    ] {
        println!("{name} tight: {}", is_tight(&alg));
    }

    // the two three-element chains are different algebras
    println!(
        "Ł_2 iso G_3: {}",
        is_isomorphic(&wajsberg_chain(2)?, &godel_chain(3)?).is_some()
    );
    Ok(())
}
