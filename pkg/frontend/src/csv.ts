/**
 * Minimal reader for the simulator's CSV outputs: header row, LF endings,
 * '.'-decimal floats, optional empty cells.
 */

export interface Table {
  header: string[];
  columns: Map<string, (number | null)[]>;
  rows: number;
}

export function parseCsv(text: string): Table {
  const lines = text.split("\n").filter((l) => l.length > 0);
  if (lines.length < 1) {
    throw new Error("MissingInput: empty CSV");
  }
  const header = splitLine(lines[0]);
  const columns = new Map<string, (number | null)[]>();
  for (const name of header) columns.set(name, []);
  for (let i = 1; i < lines.length; i++) {
    const cells = splitLine(lines[i]);
    if (cells.length !== header.length) {
      throw new Error(`ragged CSV row ${i}: ${cells.length} cells, expected ${header.length}`);
    }
    for (let j = 0; j < header.length; j++) {
      const cell = cells[j];
      if (cell === "") {
        columns.get(header[j])!.push(null);
      } else {
        const v = Number(cell);
        if (!Number.isFinite(v)) throw new Error(`non-numeric cell ${cell} in row ${i}`);
        columns.get(header[j])!.push(v);
      }
    }
  }
  return { header, columns, rows: lines.length - 1 };
}

function splitLine(line: string): string[] {
  // the writer only quotes cells containing commas/quotes/newlines
  const out: string[] = [];
  let cur = "";
  let quoted = false;
  for (let i = 0; i < line.length; i++) {
    const c = line[i];
    if (quoted) {
      if (c === '"') {
        if (line[i + 1] === '"') {
          cur += '"';
          i++;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c === '"') {
      quoted = true;
    } else if (c === ",") {
      out.push(cur);
      cur = "";
    } else {
      cur += c;
    }
  }
  out.push(cur);
  return out;
}

export function numericColumn(table: Table, name: string): number[] {
  const col = table.columns.get(name);
  if (col === undefined) {
    throw new Error(`MissingInput: no column ${name}; have ${table.header.join(", ")}`);
  }
  return col.map((v, i) => {
    if (v === null) throw new Error(`column ${name} has an empty cell at row ${i}`);
    return v;
  });
}
