// Deterministic layered layout. Layers come from a breadth-first sweep
// over the edges starting at the model's start activities; ties and
// queue order are always broken lexicographically, so a given model has
// exactly one layout.

export interface NodePosition {
  id: string;
  layer: number;
  row: number;
  x: number;
  y: number;
}

export const LAYER_DX = 220;
export const ROW_DY = 70;

export function layeredLayout(
  nodes: string[],
  edges: Array<[string, string]>,
  starts: string[],
): Map<string, NodePosition> {
  const ids = [...nodes].sort();
  const succ = new Map<string, string[]>();
  for (const id of ids) succ.set(id, []);
  for (const [from, to] of [...edges].sort()) {
    if (succ.has(from) && succ.has(to) && from !== to) {
      succ.get(from)!.push(to);
    }
  }

  const layer = new Map<string, number>();
  const roots = starts.filter((s) => succ.has(s)).sort();
  const queue: string[] = roots.length > 0 ? roots : ids.slice(0, 1);
  for (const root of queue) layer.set(root, 0);
  while (queue.length > 0) {
    const current = queue.shift()!;
    const depth = layer.get(current)!;
    for (const next of succ.get(current)!) {
      if (!layer.has(next)) {
        layer.set(next, depth + 1);
        queue.push(next);
      }
    }
  }
  // nodes unreachable from the starts go into one trailing layer
  const maxLayer = Math.max(0, ...layer.values());
  for (const id of ids) {
    if (!layer.has(id)) layer.set(id, maxLayer + 1);
  }

  const byLayer = new Map<number, string[]>();
  for (const id of ids) {
    const l = layer.get(id)!;
    if (!byLayer.has(l)) byLayer.set(l, []);
    byLayer.get(l)!.push(id);
  }

  const positions = new Map<string, NodePosition>();
  for (const [l, members] of [...byLayer.entries()].sort((a, b) => a[0] - b[0])) {
    members.sort();
    members.forEach((id, row) => {
      positions.set(id, {
        id,
        layer: l,
        row,
        x: l * LAYER_DX,
        y: row * ROW_DY,
      });
    });
  }
  return positions;
}
