//! Blind discovery of the significant χ diagonal on a CNOT, with both preparation variants.

use twirl_tomo::channel::{noise, ChannelModel};
use twirl_tomo::seqpt::{compare_variants, SeqptConfig, Variant};

fn main() -> twirl_tomo::Result<()> {
    let cnot = ChannelModel::unitary(noise::cnot())?;
    let config = SeqptConfig::new(10_000, Variant::Mub, 7);
    let cmp = compare_variants(&cnot, &config)?;
    for report in [&cmp.mub, &cmp.clifford] {
        let r = &report.result;
        println!(
            "{}: usable pairs {:.4} ± {:.4} (formula {:.4}, exact {:.4})",
            r.variant, r.usable_pair_fraction, r.usable_pair_stderr, report.closed_form, report.exact
        );
        for e in r.detected() {
            println!("  {} {:.4} ± {:.4} (M+ = {})", e.label, e.chi, e.stderr, e.m_plus);
        }
        println!(
            "  {} borderline, {} below threshold, {} singletons",
            r.estimates.len() - r.detected().count(),
            r.below_threshold,
            r.singletons
        );
    }
    Ok(())
}
