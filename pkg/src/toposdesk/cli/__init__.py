from .parser import (CategoryFile, ParseError, ProofFile, StructureSpec, algebra_by_name, parse_category,
                     parse_formula, parse_proof, parse_sequent, parse_structure, parse_theory, structure_for)
from .report import Record, Report
from .main import main, run_command
