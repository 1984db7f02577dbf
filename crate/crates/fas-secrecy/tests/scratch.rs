// Temporary timing probe; deleted before finalizing.
use fas_secrecy::config::load_config_str;
use fas_secrecy::geometry::{grid_correlation, PortGrid};
use fas_secrecy::metrics::{asc, sop, sop_oracle, Channel, NodeParams, NodeRole};
use fas_secrecy::montecarlo::simulate_metrics;
use fas_secrecy::mvn::mvn_cdf;
use std::time::Instant;

#[test]
#[ignore]
fn timing_probe() {
    for (k, w) in [(2usize, 1.0f64), (4, 1.0), (20, 1.0), (30, 1.0)] {
        let t0 = Instant::now();
        let g = PortGrid::new(k, k, w, w).unwrap();
        let c = grid_correlation(&g, 1.0).unwrap();
        let t_build = t0.elapsed();
        let t0 = Instant::now();
        let est = mvn_cdf(&c, &vec![0.3; k * k], 1e-3, 7).unwrap();
        println!(
            "dim {:4}: build {:?} jitter {:.1e} mvn {:?} value {:.6} se {:.2e} samples {}",
            k * k,
            t_build,
            c.jitter_applied(),
            t0.elapsed(),
            est.value,
            est.std_error,
            est.samples_used
        );
    }

    // Scenario costs at Table-1-like defaults.
    let cfg = load_config_str("[bob]\nk1 = 4\nk2 = 4\ngamma_db = 10.0\n", true).unwrap();
    let s = &cfg.scenario;
    let t0 = Instant::now();
    let a = asc(s).unwrap();
    println!("asc(4x4, order 32): {:?} value {:.6} err {:.2e}", t0.elapsed(), a.value, a.estimator_error);
    let t0 = Instant::now();
    let p = sop(s).unwrap();
    println!("sop(4x4): {:?} value {:.6e}", t0.elapsed(), p.value);
    let t0 = Instant::now();
    let o = sop_oracle(s, 2048).unwrap();
    println!("sop_oracle(4x4, 2048): {:?} value {:.6e} cells {}", t0.elapsed(), o.value, o.diagnostics.nodes_used);
    let t0 = Instant::now();
    let mc = simulate_metrics(s, 1_000_000, 3).unwrap();
    println!(
        "mc 1e6 (4x4): {:?} asc {:.5}+-{:.5} sop {:.6e}+-{:.2e}",
        t0.elapsed(),
        mc.asc.mean,
        mc.asc.std_error,
        mc.sop.mean,
        mc.sop.std_error
    );
    println!("analytic vs mc asc diff: {:.3e}", (a.value - mc.asc.mean).abs());
    println!("oracle vs mc sop diff: {:.3e}", (o.value - mc.sop.mean).abs());

    // ASC golden accuracy by quadrature order (K = 1).
    let mk = |order: usize| {
        let mut s = load_config_str("[bob]\nk1 = 1\nk2 = 1\ngamma_db = 10.0\n[eve]\nk1 = 1\nk2 = 1\ngamma_db = 0.0\n", true)
            .unwrap()
            .scenario;
        s.quad_order = order;
        s
    };
    for order in [2usize, 8, 16, 32, 64, 128] {
        let v = asc(&mk(order)).unwrap().value;
        println!("order {order:3}: asc {v:.12} diff {:.3e}", (v - 2.1004124800191775f64).abs());
    }

    // High-SNR case accuracy (gamma_B = 100).
    let mk2 = |order: usize| {
        let mut s = load_config_str("[bob]\nk1 = 1\nk2 = 1\ngamma_db = 20.0\n[eve]\nk1 = 1\nk2 = 1\ngamma_db = 0.0\n", true)
            .unwrap()
            .scenario;
        s.quad_order = order;
        s
    };
    for order in [32usize, 64, 128] {
        let v = asc(&mk2(order)).unwrap().value;
        println!("gamma100 order {order:3}: asc {v:.12}");
    }

    // Benchmark channel sanity: MRC vs SC vs FAS orderings at criterion-6 params.
    let base = "[bob]\nk1 = 2\nk2 = 2\ngamma_db = 10.0\n";
    let s_fas = load_config_str(base, true).unwrap().scenario;
    let mut s_mrc = s_fas.clone();
    s_mrc.bob.channel = Channel::mrc(4).unwrap();
    s_mrc.eve.channel = Channel::mrc(4).unwrap();
    s_mrc.power.active_ports = 4;
    let mut s_sc = s_fas.clone();
    s_sc.bob.channel = Channel::sc(4).unwrap();
    s_sc.eve.channel = Channel::sc(4).unwrap();
    for (name, sc) in [("fas", &s_fas), ("mrc", &s_mrc), ("sc", &s_sc)] {
        let a = asc(sc).unwrap().value;
        let o = sop_oracle(sc, 2048).unwrap().value;
        println!("{name}: asc {a:.4} sop_oracle {o:.4e} see {:.4}", a / sc.power.total_power());
    }
    let _ = NodeParams::new(
        NodeRole::Bob,
        Channel::mrc(2).unwrap(),
        fas_secrecy::MarginalModel::rayleigh(1.0).unwrap(),
        1.0,
    );
}
