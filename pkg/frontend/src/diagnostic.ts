// Inline error rendering: the offending source line with a caret under
// the reported column.

import type { DiagnosticJson } from "./api";

export function diagnosticLines(code: string, d: DiagnosticJson): string[] {
  const source = code.split("\n")[d.line - 1] ?? "";
  const caret = " ".repeat(Math.max(0, d.column - 1)) + "^";
  return [`line ${d.line} col ${d.column}: ${d.message}`, source, caret];
}
