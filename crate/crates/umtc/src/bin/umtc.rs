//! Command-line front end: bundle I/O, shipped catalog, command dispatch,
//! and machine-readable JSON reports.
//!
//! Exit status: 0 when every verdict passes, 1 on a verdict failure, 2 on
//! input errors (bad file, unknown command, malformed flags).

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use umtc::bundle::{load_category, save_category};
use umtc::category::{deligne_product, Category};
use umtc::lattice::{self, DoubleCentralizerOutcome, FusionSubcategory, PrimalityVerdict};
use umtc::modular::{self, ModularityVerdict};
use umtc::points::{self, ComparabilityOutcome, PairingMode};
use umtc::report::ReportDocument;
use umtc::solver;
use umtc::{catalog, Error};

#[derive(Parser)]
#[command(name = "umtc", version, about = "skeletal (pre-)modular tensor category toolkit")]
struct Cli {
    /// Write the JSON report to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a bundle: ring axioms plus pentagon/hexagon/unitarity for
    /// whatever tables it carries.
    Validate { bundle: String },
    /// Frobenius–Perron dimensions and global dimension.
    Dims { bundle: String },
    /// Assemble twists and the unnormalized S-matrix.
    Smatrix { bundle: String },
    /// Modularity check with degenerate witnesses, Verlinde round trip, and
    /// the killing-ring identity.
    Modularity { bundle: String },
    /// Enumerate fusion subcategories.
    Subcats { bundle: String },
    /// Müger centralizer of a member set.
    Centralizer {
        bundle: String,
        /// Comma-separated sector labels generating the subcategory.
        #[arg(long, value_delimiter = ',')]
        members: Vec<String>,
    },
    /// Prime factorization with Kronecker certificates.
    PrimeFactor { bundle: String },
    /// Enumerate all unitary braided structures over a fusion ring.
    SolveBraidings {
        /// Bundle supplying the fusion ring (and default F table).
        #[arg(long)]
        ring: String,
        /// Additional bundles whose F tables are also solved over.
        #[arg(long = "f-table")]
        f_tables: Vec<String>,
        /// Write each solution as a bundle file into this directory.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Trivial-pairing / comparability / holomorphic checks for a pair of
    /// subcategories.
    PointCheck {
        #[arg(long)]
        bundle: String,
        /// Comma-separated labels of the left subcategory.
        #[arg(long, value_delimiter = ',')]
        left: Vec<String>,
        /// Comma-separated labels of the right subcategory.
        #[arg(long, value_delimiter = ',')]
        right: Vec<String>,
        #[arg(long, value_enum, default_value_t = CheckMode::Monodromy)]
        mode: CheckMode,
    },
    /// Deligne product of two bundles.
    Product {
        left: String,
        right: String,
        /// Write the product as a bundle file.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// List or export the shipped catalog.
    Catalog {
        #[arg(long)]
        list: bool,
        /// Export every entry as a bundle file into this directory.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckMode {
    Monodromy,
    Strict,
    Comparability,
    Holomorphic,
}

/// A bundle argument is a file path when one exists, otherwise a shipped
/// catalog name.
fn resolve(spec: &str) -> umtc::Result<Category> {
    let path = Path::new(spec);
    if path.exists() {
        load_category(path)
    } else {
        catalog::by_name(spec)
    }
}

fn members_of(cat: &Category, labels: &[String]) -> umtc::Result<Vec<usize>> {
    labels
        .iter()
        .map(|l| {
            cat.ring
                .index_of(l)
                .ok_or_else(|| Error::Validation(format!("unknown label {l:?} in {}", cat.name)))
        })
        .collect()
}

fn label_set(cat: &Category, members: &[usize]) -> String {
    let names: Vec<&str> = members.iter().map(|&m| cat.ring.label(m)).collect();
    format!("{{{}}}", names.join(","))
}

fn run(cli: &Cli) -> umtc::Result<ReportDocument> {
    let tol = umtc::tolerance();
    match &cli.command {
        Command::Validate { bundle } => {
            let cat = resolve(bundle)?;
            let mut doc = ReportDocument::new(format!("validate {}", cat.name));
            let ring_report = cat.ring.validate();
            doc.verdict(
                "ring-axioms",
                ring_report.is_valid(),
                format!("{} violations", ring_report.violations.len()),
            );
            let coherence = cat.verify(tol)?;
            if let Some(p) = &coherence.pentagon {
                doc.verdict("pentagon", p.pass(), format!("residual {:.3e}", p.max_residual));
                doc.residual("pentagon", p.max_residual);
            }
            if let Some(h) = &coherence.hexagon {
                doc.verdict("hexagon", h.pass(), format!("residual {:.3e}", h.max_residual));
                doc.residual("hexagon", h.max_residual);
            }
            if let Some(u) = &coherence.unitarity {
                let worst = u.f_residual.max(u.r_residual);
                doc.verdict("unitarity", u.pass(), format!("residual {worst:.3e}"));
                doc.residual("unitarity", worst);
            }
            Ok(doc)
        }
        Command::Dims { bundle } => {
            let cat = resolve(bundle)?;
            let mut doc = ReportDocument::new(format!("dims {}", cat.name));
            for (i, d) in cat.dims.d.iter().enumerate() {
                doc.residual(format!("d[{}]", cat.ring.label(i)), *d);
            }
            doc.residual("global-dimension", cat.dims.dsq);
            doc.verdict("dims", true, format!("rank {}", cat.rank()));
            Ok(doc)
        }
        Command::Smatrix { bundle } => {
            let cat = resolve(bundle)?;
            let md = cat.modular_dataset(tol)?;
            let mut doc = ReportDocument::new(format!("smatrix {}", cat.name));
            doc.matrix("stilde", md.rank, md.rank, &md.stilde);
            doc.matrix("twists", 1, md.rank, &md.theta);
            doc.verdict("assembled", true, format!("rank {}", md.rank));
            Ok(doc)
        }
        Command::Modularity { bundle } => {
            let cat = resolve(bundle)?;
            let md = cat.modular_dataset(tol)?;
            let mut doc = ReportDocument::new(format!("modularity {}", cat.name));
            match modular::modularity_check(&md, tol) {
                ModularityVerdict::Modular { residual } => {
                    doc.verdict("modular", true, format!("residual {residual:.3e}"));
                    doc.residual("s-unitarity", residual);
                    let verlinde = modular::verlinde_reconstruct(&md, tol)?;
                    doc.verdict(
                        "verlinde",
                        true,
                        format!("max deviation {:.3e}", verlinde.max_deviation),
                    );
                    doc.residual("verlinde", verlinde.max_deviation);
                }
                ModularityVerdict::Degenerate { witnesses, residual } => {
                    doc.verdict("modular", false, format!("residual {residual:.3e}"));
                    for w in witnesses {
                        doc.witness(cat.ring.label(w).to_string());
                    }
                }
            }
            let killing = modular::killing_ring_check(&md);
            doc.verdict(
                "killing-ring",
                killing.max_residual < tol,
                format!("residual {:.3e}", killing.max_residual),
            );
            doc.residual("killing-ring", killing.max_residual);
            Ok(doc)
        }
        Command::Subcats { bundle } => {
            let cat = resolve(bundle)?;
            let subs = lattice::enumerate_subcategories(&cat.ring)?;
            let mut doc = ReportDocument::new(format!("subcats {}", cat.name));
            for s in &subs {
                doc.note(label_set(&cat, &s.members));
            }
            doc.verdict("enumerated", true, format!("{} subcategories", subs.len()));
            Ok(doc)
        }
        Command::Centralizer { bundle, members } => {
            let cat = resolve(bundle)?;
            let seed = members_of(&cat, members)?;
            let d = lattice::closure(&cat.ring, &seed);
            let result = lattice::centralizer(&cat, &d, tol)?;
            let mut doc = ReportDocument::new(format!("centralizer {}", cat.name));
            doc.note(format!("source {}", label_set(&cat, &d.members)));
            doc.note(format!(
                "centralizer {}",
                label_set(&cat, &result.centralizer.members)
            ));
            for e in &result.exclusions {
                doc.witness(format!(
                    "{} excluded against {} (channel {})",
                    cat.ring.label(e.sector),
                    cat.ring.label(e.against),
                    cat.ring.label(e.channel),
                ));
            }
            doc.verdict(
                "centralizer",
                true,
                format!("rank {}", result.centralizer.members.len()),
            );
            match lattice::double_centralizer_check(&cat, tol)? {
                DoubleCentralizerOutcome::Skipped { degenerate_witnesses } => {
                    doc.note(format!(
                        "double-centralizer check skipped: degenerate sectors {}",
                        label_set(&cat, &degenerate_witnesses)
                    ));
                }
                DoubleCentralizerOutcome::Ran { checked, failures } => {
                    doc.verdict(
                        "double-centralizer",
                        failures.is_empty(),
                        format!("{checked} subcategories checked"),
                    );
                }
            }
            Ok(doc)
        }
        Command::PrimeFactor { bundle } => {
            let cat = resolve(bundle)?;
            let mut doc = ReportDocument::new(format!("prime-factor {}", cat.name));
            match lattice::is_prime(&cat, tol)? {
                PrimalityVerdict::Prime => {
                    doc.verdict("prime", true, "no proper modular subcategory");
                    doc.note("1 factor (the category itself)");
                }
                PrimalityVerdict::NotPrime { witness } => {
                    doc.note(format!(
                        "not prime: modular subcategory {}",
                        label_set(&cat, &witness.members)
                    ));
                    let fact = lattice::prime_factorize(&cat, tol)?;
                    doc.verdict(
                        "factorized",
                        true,
                        format!("{} prime factors", fact.factors.len()),
                    );
                    for f in &fact.factors {
                        doc.note(format!(
                            "factor {} = {}",
                            f.category.name,
                            label_set(&cat, &f.members.members)
                        ));
                    }
                    doc.residual("kronecker-s", fact.s_residual);
                    doc.residual("kronecker-t", fact.t_residual);
                    doc.verdict(
                        "certificates",
                        fact.s_residual < tol && fact.t_residual < tol,
                        "Kronecker S and T residuals",
                    );
                }
            }
            Ok(doc)
        }
        Command::SolveBraidings { ring, f_tables, export } => {
            let base = resolve(ring)?;
            let mut classes = vec![(base.name.clone(), base.require_f()?.clone())];
            for spec in f_tables {
                let cat = resolve(spec)?;
                if cat.ring.rank() != base.ring.rank() {
                    return Err(Error::Validation(format!(
                        "F-table bundle {} has a different fusion ring",
                        cat.name
                    )));
                }
                classes.push((cat.name.clone(), cat.require_f()?.clone()));
            }
            let f_list: Vec<_> = classes.iter().map(|(_, f)| f.clone()).collect();
            let result = solver::enumerate_ubtcs(&base.ring, &f_list, tol)?;
            let mut doc = ReportDocument::new(format!("solve-braidings {}", base.name));
            doc.verdict(
                "solved",
                true,
                format!(
                    "{} fingerprint-distinct braided structures over {} F classes",
                    result.entries.len(),
                    f_list.len()
                ),
            );
            let mut worst = 0.0f64;
            for (i, e) in result.entries.iter().enumerate() {
                worst = worst.max(e.residual);
                let modular = match &e.verdict {
                    ModularityVerdict::Modular { .. } => "modular",
                    ModularityVerdict::Degenerate { .. } => "degenerate",
                };
                doc.note(format!(
                    "solution {i}: F class {} ({}), hexagon residual {:.3e}, {modular}",
                    e.f_index, classes[e.f_index].0, e.residual
                ));
                if let Some(dir) = export {
                    std::fs::create_dir_all(dir)?;
                    let mut cat = base.clone();
                    cat.f = Some(f_list[e.f_index].clone());
                    cat.r = Some(e.r.clone());
                    cat.name = format!("{}-solution-{i}", base.name);
                    save_category(&cat, &dir.join(format!("{}.json", cat.name)))?;
                }
            }
            doc.residual("max-hexagon", worst);
            Ok(doc)
        }
        Command::PointCheck { bundle, left, right, mode } => {
            let cat = resolve(bundle)?;
            let d1 = FusionSubcategory::new(members_of(&cat, left)?);
            let d2 = FusionSubcategory::new(members_of(&cat, right)?);
            let mut doc = ReportDocument::new(format!("point-check {}", cat.name));
            match mode {
                CheckMode::Monodromy | CheckMode::Strict => {
                    let pm = match mode {
                        CheckMode::Strict => PairingMode::BraidingStrict,
                        _ => PairingMode::Monodromy,
                    };
                    let rep = points::trivial_pairing(&cat, &d1, &d2, pm, tol)?;
                    if rep.gauge_dependent {
                        doc.note("braiding-strict verdict is gauge-dependent".to_string());
                    }
                    for f in &rep.failures {
                        doc.witness(format!(
                            "({},{}) channel {}: {:.6}+{:.6}i",
                            cat.ring.label(f.a),
                            cat.ring.label(f.b),
                            cat.ring.label(f.channel),
                            f.value.re,
                            f.value.im,
                        ));
                    }
                    doc.verdict("trivial-pairing", rep.pass(), format!("{} failures", rep.failures.len()));
                }
                CheckMode::Comparability => {
                    let v = points::comparability_resolve(&cat, &d1, &d2, tol)?;
                    doc.note(format!("left closure {}", label_set(&cat, &v.closures.0.members)));
                    doc.note(format!("right closure {}", label_set(&cat, &v.closures.1.members)));
                    for c in &v.certificates {
                        doc.note(c.clone());
                    }
                    let (pass, detail) = match &v.outcome {
                        ComparabilityOutcome::LeftCollapses => (true, "left collapses".to_string()),
                        ComparabilityOutcome::RightCollapses => (true, "right collapses".to_string()),
                        ComparabilityOutcome::BothTrivial => (true, "both trivial".to_string()),
                        ComparabilityOutcome::Obstruction(w) => {
                            doc.witness(format!("{w:?}"));
                            (false, "obstruction".to_string())
                        }
                    };
                    doc.verdict("comparability", pass, detail);
                }
                CheckMode::Holomorphic => {
                    match points::holomorphic_obstruction(&cat, &d1, &d2, tol)? {
                        points::HolomorphicVerdict::Pass => {
                            doc.verdict("holomorphic", true, "intersection is trivial");
                        }
                        points::HolomorphicVerdict::Witness { sector } => {
                            doc.witness(cat.ring.label(sector).to_string());
                            doc.verdict("holomorphic", false, "nontrivial intersection");
                        }
                    }
                }
            }
            Ok(doc)
        }
        Command::Product { left, right, save } => {
            let a = resolve(left)?;
            let b = resolve(right)?;
            let prod = deligne_product(&a, &b, tol)?;
            let mut doc = ReportDocument::new(format!("product {} {}", a.name, b.name));
            doc.verdict("constructed", true, format!("rank {}", prod.rank()));
            doc.residual("global-dimension", prod.dims.dsq);
            if let Some(path) = save {
                save_category(&prod, path)?;
                doc.note(format!("saved to {}", path.display()));
            }
            Ok(doc)
        }
        Command::Catalog { list: _, export } => {
            let cats = catalog::shipped()?;
            let mut doc = ReportDocument::new("catalog");
            for cat in &cats {
                doc.note(format!("{} (rank {})", cat.name, cat.rank()));
            }
            if let Some(dir) = export {
                std::fs::create_dir_all(dir)?;
                for cat in &cats {
                    save_category(cat, &dir.join(format!("{}.json", cat.name)))?;
                }
                doc.note(format!("exported {} bundles to {}", cats.len(), dir.display()));
            }
            doc.verdict("catalog", true, format!("{} entries", cats.len()));
            Ok(doc)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(doc) => {
            let text = doc.to_json();
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &text) {
                        eprintln!("error: {e}");
                        std::process::exit(2);
                    }
                }
                None => print!("{text}"),
            }
            std::process::exit(doc.exit_code);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
