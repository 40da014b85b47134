use std::fmt;
use std::path::Path;

use grossone::apps::pieces_from_json;
use grossone::{
    eval_alternating, event_probability, parse_expr, parse_with_limit, print_canonical,
    print_decimal, solve_grossone, total_measure, GrossNumber, LinearSystem,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputMode {
    Canonical,
    Decimal(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliConfig {
    pub min_power: i64,
    pub depth_limit: usize,
    pub output: OutputMode,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            min_power: grossone::DEFAULT_MIN_POWER,
            depth_limit: grossone::DEFAULT_DEPTH_LIMIT,
            output: OutputMode::Canonical,
        }
    }
}

impl CliConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.depth_limit < 1 {
            return Err(CliError::Usage("--depth must be at least 1".into()));
        }
        if self.output == OutputMode::Decimal(0) {
            return Err(CliError::Usage("decimal digits must be at least 1".into()));
        }
        Ok(())
    }

    pub fn render(&self, n: &GrossNumber) -> String {
        match self.output {
            OutputMode::Canonical => print_canonical(n),
            OutputMode::Decimal(digits) => print_decimal(n, digits),
        }
    }

    fn min_power(&self) -> GrossNumber {
        GrossNumber::from_integer(self.min_power)
    }

    fn numeral(&self, text: &str) -> Result<GrossNumber, CliError> {
        Ok(parse_with_limit(text, self.depth_limit)?)
    }
}

#[derive(Debug)]
pub enum CliError {
    Core(grossone::Error),
    Io(String),
    Usage(String),
}

impl CliError {
    pub fn category(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.category(),
            CliError::Io(_) => "io",
            CliError::Usage(_) => "usage",
        }
    }

    /// Distinct nonzero exit status per error category.
    pub fn exit_code(&self) -> i32 {
        match self.category() {
            "usage" => 2,
            "syntax" => 3,
            "division-by-zero" => 4,
            "depth" => 5,
            "singular" => 6,
            "io" => 7,
            "schema" => 8,
            "not-integer" => 9,
            "inexact-inverse" => 10,
            "probability" => 11,
            "step-limit" => 12,
            "argument" => 13,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(msg) | CliError::Usage(msg) => f.write_str(msg),
        }
    }
}

impl From<grossone::Error> for CliError {
    fn from(e: grossone::Error) -> Self {
        CliError::Core(e)
    }
}

pub struct EvalOutput {
    pub text: String,
    pub exact: bool,
}

impl fmt::Display for EvalOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.text)?;
        write!(f, "{}", if self.exact { "exact" } else { "inexact" })
    }
}

pub fn cmd_eval(expr: &str, at: Option<&str>, config: &CliConfig) -> Result<EvalOutput, CliError> {
    let e = parse_expr(expr)?;
    let point = at.map(|s| config.numeral(s)).transpose()?;
    if e.has_variable() && point.is_none() {
        return Err(CliError::Usage(
            "the expression has a variable; give a point with --at".into(),
        ));
    }
    let v = e.eval(point.as_ref(), &config.min_power())?;
    Ok(EvalOutput {
        text: config.render(&v.value),
        exact: v.exact,
    })
}

pub fn cmd_solve(path: &Path) -> Result<String, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let sys = LinearSystem::from_json(&text)?;
    let report = solve_grossone(&sys)?;
    Ok(serde_json::to_string_pretty(&report.to_json()).expect("json values serialize"))
}

pub fn cmd_sum(
    formula: Option<&str>,
    alternating: bool,
    items: &str,
    config: &CliConfig,
) -> Result<String, CliError> {
    let k = config.numeral(items)?;
    let value = match (formula, alternating) {
        (None, true) => eval_alternating(&k)?,
        (Some(f), false) => {
            let e = parse_expr(f)?;
            e.eval(Some(&k), &config.min_power())?.value
        }
        _ => {
            return Err(CliError::Usage(
                "give either a closed-form formula or --alternating".into(),
            ))
        }
    };
    Ok(config.render(&value))
}

pub fn cmd_prob(favorable: &str, total: &str, config: &CliConfig) -> Result<String, CliError> {
    let p = event_probability(&config.numeral(favorable)?, &config.numeral(total)?)?;
    Ok(config.render(&p))
}

pub fn cmd_measure(
    file: Option<&Path>,
    inline: Option<&str>,
    config: &CliConfig,
) -> Result<String, CliError> {
    let text = match (file, inline) {
        (Some(path), None) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        (None, Some(json)) => json.to_string(),
        _ => {
            return Err(CliError::Usage(
                "give either a pieces file or --json".into(),
            ))
        }
    };
    let pieces = pieces_from_json(&text)?;
    Ok(config.render(&total_measure(&pieces)))
}

/// What the read-eval-print loop should do after a line.
#[derive(Debug, PartialEq, Eq)]
pub enum ReplStep {
    Print(String),
    Error(String),
    Silent,
    Quit,
}

/// Line handler for the interactive loop; the only state is the config.
pub struct Repl {
    pub config: CliConfig,
}

impl Repl {
    pub fn new(config: CliConfig) -> Self {
        Repl { config }
    }

    pub fn handle_line(&mut self, line: &str) -> ReplStep {
        let line = line.trim();
        if line.is_empty() {
            return ReplStep::Silent;
        }
        if let Some(directive) = line.strip_prefix(':') {
            return self.directive(directive);
        }
        match cmd_eval(line, None, &self.config) {
            Ok(out) if out.exact => ReplStep::Print(out.text),
            Ok(out) => ReplStep::Print(format!("{}  (inexact)", out.text)),
            Err(e) => ReplStep::Error(format!("error[{}]: {e}", e.category())),
        }
    }

    fn directive(&mut self, directive: &str) -> ReplStep {
        let words: Vec<&str> = directive.split_whitespace().collect();
        let usage = |msg: &str| ReplStep::Error(format!("error[usage]: {msg}"));
        match words.as_slice() {
            ["quit"] | ["q"] => ReplStep::Quit,
            ["set", "min_power", v] => match v.parse() {
                Ok(p) => {
                    self.config.min_power = p;
                    ReplStep::Silent
                }
                Err(_) => usage("min_power takes an integer"),
            },
            ["set", "output", "canonical"] => {
                self.config.output = OutputMode::Canonical;
                ReplStep::Silent
            }
            ["set", "output", "decimal"] => {
                self.config.output = OutputMode::Decimal(6);
                ReplStep::Silent
            }
            ["set", "output", "decimal", d] => match d.parse::<usize>() {
                Ok(d) if d >= 1 => {
                    self.config.output = OutputMode::Decimal(d);
                    ReplStep::Silent
                }
                _ => usage("decimal digits must be a positive integer"),
            },
            ["set", "depth", d] => match d.parse::<usize>() {
                Ok(d) if d >= 1 => {
                    self.config.depth_limit = d;
                    ReplStep::Silent
                }
                _ => usage("depth must be a positive integer"),
            },
            _ => usage(
                "directives are :set min_power <int>, :set output canonical|decimal [digits], \
                 :set depth <int>, :quit",
            ),
        }
    }
}
