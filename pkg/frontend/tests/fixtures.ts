import type { PuzzleSpec } from "../src/api";

/** The classic five-house riddle, minus the "Norwegian in the first
 * house" clue — the board tests place that fact by hand. */
export const boardSpec: PuzzleSpec = {
  positions: 5,
  categories: [
    { name: "color", values: ["red", "green", "white", "yellow", "blue"] },
    {
      name: "nationality",
      values: ["Brit", "Swede", "Dane", "Norwegian", "German"],
    },
    { name: "drink", values: ["tea", "coffee", "milk", "beer", "water"] },
    {
      name: "smoke",
      values: ["PallMall", "Dunhill", "Blends", "BlueMaster", "Prince"],
    },
    { name: "pet", values: ["dogs", "birds", "cats", "horses", "fish"] },
  ],
  clues: [
    { kind: "Same", a: ["nationality", "Brit"], b: ["color", "red"] },
    { kind: "Same", a: ["nationality", "Swede"], b: ["pet", "dogs"] },
    { kind: "Same", a: ["nationality", "Dane"], b: ["drink", "tea"] },
    { kind: "ImmediatelyLeftOf", a: ["color", "green"], b: ["color", "white"] },
    { kind: "Same", a: ["color", "green"], b: ["drink", "coffee"] },
    { kind: "Same", a: ["smoke", "PallMall"], b: ["pet", "birds"] },
    { kind: "Same", a: ["color", "yellow"], b: ["smoke", "Dunhill"] },
    { kind: "PositionIs", a: ["drink", "milk"], index: 2 },
    { kind: "NextTo", a: ["smoke", "Blends"], b: ["pet", "cats"] },
    { kind: "NextTo", a: ["pet", "horses"], b: ["smoke", "Dunhill"] },
    { kind: "Same", a: ["smoke", "BlueMaster"], b: ["drink", "beer"] },
    { kind: "Same", a: ["nationality", "German"], b: ["smoke", "Prince"] },
    { kind: "NextTo", a: ["nationality", "Norwegian"], b: ["color", "blue"] },
    { kind: "NextTo", a: ["smoke", "Blends"], b: ["drink", "water"] },
  ],
};
