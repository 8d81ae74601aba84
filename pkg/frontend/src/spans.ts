/** Turn server highlight spans into renderable segments.
 *
 * Span offsets are byte offsets into the UTF-8 encoding of the document
 * (the service's contract), while JS strings index UTF-16 code units, so
 * segmentation walks the document once building a byte->code-unit map.
 */

import type { Span } from "./types.js";

export interface Segment {
  text: string;
  marked: boolean;
  surface?: string;
}

export function segmentDocument(document: string, spans: Span[]): Segment[] {
  const encoder = new TextEncoder();
  const unitAtByte = new Map<number, number>();
  let byteOffset = 0;
  let unitOffset = 0;
  unitAtByte.set(0, 0);
  for (const ch of document) {
    byteOffset += encoder.encode(ch).length;
    unitOffset += ch.length;
    unitAtByte.set(byteOffset, unitOffset);
  }

  const toUnits = (byte: number): number => {
    const unit = unitAtByte.get(byte);
    if (unit === undefined) {
      throw new Error(`byte offset ${byte} is not a character boundary`);
    }
    return unit;
  };

  const segments: Segment[] = [];
  let cursor = 0;
  for (const span of spans) {
    const start = toUnits(span.start);
    const end = toUnits(span.end);
    if (start > cursor) {
      segments.push({ text: document.slice(cursor, start), marked: false });
    }
    segments.push({
      text: document.slice(start, end),
      marked: true,
      surface: span.surface,
    });
    cursor = end;
  }
  if (cursor < document.length) {
    segments.push({ text: document.slice(cursor), marked: false });
  }
  return segments;
}
