"""TSV readers and writers for the toolkit's input and output tables.

Layouts (tab separated, header row optional on read, always written):

    genotypes      iid  snp1 ... snpN       cells in {0, 1, 2, NA}
    phenotype      iid  value
    SNP map        snp_id  chrom  pos
    genes          gene_id  chrom  start  end
    interactions   gene_id_a  gene_id_b
    covariates     iid  c1 ... ck           header required
    SNP list       snp_id
"""
import logging
import re
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from .errors import GenotypeFormatError
from .models import (
    MISSING_TOKEN,
    Covariates,
    GeneAnnotation,
    GeneInteractionList,
    GenotypeMatrix,
    Phenotype,
    SnpMap,
)

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

_VALID_GENOTYPE_TOKENS = np.array(["0", "1", "2", MISSING_TOKEN])


def format_number(value: float) -> str:
    """Decimal rendering with 10 significant digits and a '.' radix."""
    return format(float(value), ".10g")


def _read_tsv(path: PathLike, n_columns: Optional[int], header_name: Optional[str]) -> Tuple[pd.DataFrame, int]:
    """Read a TSV of strings, checking arity on every line.

    Returns the frame and the file line number of its first data row.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Input file not found: {path}")

    try:
        frame = pd.read_csv(
            path,
            sep="\t",
            header=None,
            dtype=str,
            keep_default_na=False,
            na_filter=False,
            skip_blank_lines=True,
        )
    except pd.errors.EmptyDataError:
        raise GenotypeFormatError(path, 1, "file is empty")
    except pd.errors.ParserError as e:
        match = re.search(r"line (\d+)", str(e))
        line = int(match.group(1)) if match else 0
        raise GenotypeFormatError(path, line, f"wrong number of fields ({e})")

    first_line = 1
    if header_name is not None and frame.shape[0] and frame.iat[0, 0] == header_name:
        header = frame.iloc[0]
        frame = frame.iloc[1:].reset_index(drop=True)
        frame.columns = list(header)
        first_line = 2

    short_rows = np.flatnonzero(frame.isna().any(axis=1).to_numpy())
    if short_rows.size:
        raise GenotypeFormatError(path, first_line + int(short_rows[0]), "wrong number of fields")
    if n_columns is not None and frame.shape[1] != n_columns:
        raise GenotypeFormatError(
            path, first_line, f"expected {n_columns} columns, found {frame.shape[1]}"
        )
    return frame, first_line


def _impute_mode(tokens: np.ndarray, snp_ids: Sequence[str]) -> Tuple[np.ndarray, int]:
    """Fill missing cells with the per-SNP mode (ties go to the smaller count)."""
    missing = tokens == MISSING_TOKEN
    values = np.where(missing, "0", tokens).astype(np.int8)
    n_missing = int(missing.sum())
    if n_missing == 0:
        return values, 0

    for j in np.flatnonzero(missing.any(axis=0)):
        observed = values[~missing[:, j], j]
        if observed.size == 0:
            raise ValueError(f"SNP {snp_ids[j]!r} has no observed genotypes")
        counts = np.bincount(observed, minlength=3)
        values[missing[:, j], j] = int(np.argmax(counts))
    return values, n_missing


def load_genotypes(path: PathLike, format: str = "tsv") -> GenotypeMatrix:
    """Load a genotype matrix; rows come back sorted by individual id.

    Args:
        path: Path to the genotype TSV
        format: Only "tsv" is supported

    Returns:
        Validated GenotypeMatrix; ``imputed_cells`` counts the NA cells filled in

    Raises:
        FileNotFoundError: If the file does not exist
        GenotypeFormatError: On bad arity or tokens outside {0, 1, 2, NA}
        ValueError: On duplicate ids
    """
    if format != "tsv":
        raise ValueError(f"Unsupported genotype format: {format!r}")

    frame, first_line = _read_tsv(path, None, header_name="iid")
    if first_line != 2:
        raise GenotypeFormatError(path, 1, "missing 'iid' header row")
    if frame.shape[1] < 2:
        raise GenotypeFormatError(path, 1, "no SNP columns")

    individual_ids = list(frame.iloc[:, 0])
    snp_ids = list(frame.columns[1:])
    tokens = frame.iloc[:, 1:].to_numpy(dtype=str)

    invalid = ~np.isin(tokens, _VALID_GENOTYPE_TOKENS)
    if invalid.any():
        row, col = np.argwhere(invalid)[0]
        raise GenotypeFormatError(
            path, first_line + int(row),
            f"invalid genotype {tokens[row, col]!r} for SNP {snp_ids[col]!r}",
        )

    values, n_imputed = _impute_mode(tokens, snp_ids)
    if n_imputed:
        logger.warning("Imputed %d missing genotype cells with the per-SNP mode", n_imputed)

    order = np.argsort(np.array(individual_ids, dtype=object), kind="stable")
    return GenotypeMatrix(
        values=values[order],
        snp_ids=tuple(snp_ids),
        individual_ids=tuple(individual_ids[i] for i in order),
        imputed_cells=n_imputed,
    )


def write_genotypes(genotypes: GenotypeMatrix, path: PathLike):
    """Write a genotype matrix in the layout ``load_genotypes`` reads."""
    lines = ["\t".join(("iid",) + genotypes.snp_ids)]
    for iid, row in zip(genotypes.individual_ids, genotypes.values):
        lines.append("\t".join([iid] + [str(int(v)) for v in row]))
    _write_lines(path, lines)


def load_phenotype(path: PathLike) -> Phenotype:
    """Load ``iid<TAB>value``; rows with value NA are dropped with a warning."""
    frame, first_line = _read_tsv(path, 2, header_name="iid")
    ids, values = [], []
    n_missing = 0
    for offset, (iid, raw) in enumerate(frame.itertuples(index=False)):
        if raw == MISSING_TOKEN:
            n_missing += 1
            continue
        try:
            value = float(raw)
        except ValueError:
            raise GenotypeFormatError(path, first_line + offset, f"non-numeric phenotype {raw!r}")
        if not np.isfinite(value):
            raise GenotypeFormatError(path, first_line + offset, f"non-finite phenotype {raw!r}")
        ids.append(iid)
        values.append(value)
    if n_missing:
        logger.warning("Dropped %d individuals with missing phenotype", n_missing)
    return Phenotype(values=np.array(values), individual_ids=tuple(ids))


def write_phenotype(phenotype: Phenotype, path: PathLike):
    lines = ["iid\tvalue"]
    lines += [f"{iid}\t{format_number(v)}" for iid, v in zip(phenotype.individual_ids, phenotype.values)]
    _write_lines(path, lines)


def _parse_ints(path, first_line, column, what) -> np.ndarray:
    try:
        return column.astype(np.int64).to_numpy()
    except ValueError:
        for offset, raw in enumerate(column):
            if not re.fullmatch(r"-?\d+", raw):
                raise GenotypeFormatError(path, first_line + offset, f"non-integer {what} {raw!r}")
        raise


def load_snp_map(path: PathLike) -> SnpMap:
    """Load ``snp_id<TAB>chrom<TAB>pos``; records are sorted canonically."""
    frame, first_line = _read_tsv(path, 3, header_name="snp_id")
    positions = _parse_ints(path, first_line, frame.iloc[:, 2], "position")
    return SnpMap(
        snp_ids=tuple(frame.iloc[:, 0]),
        chromosomes=tuple(frame.iloc[:, 1]),
        positions=positions,
    )


def write_snp_map(snp_map: SnpMap, path: PathLike):
    lines = ["snp_id\tchrom\tpos"]
    lines += [
        f"{s}\t{c}\t{int(p)}" for s, c, p in zip(snp_map.snp_ids, snp_map.chromosomes, snp_map.positions)
    ]
    _write_lines(path, lines)


def load_gene_annotation(path: PathLike) -> GeneAnnotation:
    """Load ``gene_id<TAB>chrom<TAB>start<TAB>end``."""
    frame, first_line = _read_tsv(path, 4, header_name="gene_id")
    return GeneAnnotation(
        gene_ids=tuple(frame.iloc[:, 0]),
        chromosomes=tuple(frame.iloc[:, 1]),
        starts=_parse_ints(path, first_line, frame.iloc[:, 2], "start"),
        ends=_parse_ints(path, first_line, frame.iloc[:, 3], "end"),
    )


def write_gene_annotation(genes: GeneAnnotation, path: PathLike):
    lines = ["gene_id\tchrom\tstart\tend"]
    lines += [
        f"{g}\t{c}\t{int(s)}\t{int(e)}"
        for g, c, s, e in zip(genes.gene_ids, genes.chromosomes, genes.starts, genes.ends)
    ]
    _write_lines(path, lines)


def load_interactions(path: PathLike) -> GeneInteractionList:
    """Load ``gene_id_a<TAB>gene_id_b``; self pairs are dropped with a warning."""
    frame, _ = _read_tsv(path, 2, header_name="gene_id_a")
    pairs = [(a, b) for a, b in frame.itertuples(index=False)]
    kept = [(a, b) for a, b in pairs if a != b]
    if len(kept) != len(pairs):
        logger.warning("Dropped %d self-interaction rows", len(pairs) - len(kept))
    return GeneInteractionList(pairs=tuple(kept))


def write_interactions(interactions: GeneInteractionList, path: PathLike):
    lines = ["gene_id_a\tgene_id_b"] + [f"{a}\t{b}" for a, b in interactions.pairs]
    _write_lines(path, lines)


def load_covariates(path: PathLike) -> Covariates:
    """Load ``iid<TAB>c1 ... ck`` (header row required)."""
    frame, first_line = _read_tsv(path, None, header_name="iid")
    if first_line != 2:
        raise GenotypeFormatError(path, 1, "covariate file needs an 'iid' header row")
    try:
        values = frame.iloc[:, 1:].to_numpy(dtype=np.float64)
    except ValueError as e:
        raise GenotypeFormatError(path, first_line, f"non-numeric covariate ({e})")
    return Covariates(
        values=values,
        labels=tuple(frame.columns[1:]),
        individual_ids=tuple(frame.iloc[:, 0]),
    )


def write_covariates(covariates: Covariates, path: PathLike):
    lines = ["\t".join(("iid",) + covariates.labels)]
    for iid, row in zip(covariates.individual_ids, covariates.values):
        lines.append("\t".join([iid] + [format_number(v) for v in row]))
    _write_lines(path, lines)


def load_snp_list(path: PathLike) -> List[str]:
    """Load a one-column list of SNP ids (header ``snp_id`` optional)."""
    frame, _ = _read_tsv(path, None, header_name="snp_id")
    return list(frame.iloc[:, 0]) if frame.shape[0] else []


def write_snp_list(snp_ids: Sequence[str], path: PathLike):
    _write_lines(path, ["snp_id"] + list(snp_ids))


def _write_lines(path: PathLike, lines: List[str]):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as f:
        f.write("\n".join(lines) + "\n")
